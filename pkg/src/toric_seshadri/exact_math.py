"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
vectors are tuples and matrices are tuples of row tuples.  Nothing rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

Rat = Fraction
IntVec = tuple[int, ...]
IntMatrix = tuple[IntVec, ...]


class ZeroVector(ValueError):
    pass


class NonSquareMatrix(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(r) for r in rows)


def _check_rectangular(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    width = len(m[0])
    for row in m:
        if len(row) != width:
            raise ValueError("ragged matrix")
    return width


def transpose(m: Sequence[Sequence]) -> tuple:
    if not m:
        return ()
    return tuple(zip(*m))


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        raise ZeroVector("ZeroVector: cannot primitivize %r" % (tuple(v),))
    return tuple(x // g for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise NonSquareMatrix("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    cols = _check_rectangular(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel ``{x : m x = 0}`` over the rationals.

    One basis vector per free column, with a 1 in that column.
    """
    cols = _check_rectangular(m)
    if not m:
        return []
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row, p in zip(a, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One rational solution of ``m x = b``, or None if inconsistent."""
    cols = _check_rectangular(m)
    aug = [list(row) + [rhs] for row, rhs in zip(m, b)]
    a, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row, p in zip(a, pivots):
        x[p] = row[cols]
    return tuple(x)


def integer_scale(v: Sequence[Fraction]) -> IntVec:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    return primitive(ints)


class SmithForm(NamedTuple):
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""

    factors: tuple[int, ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def cokernel_rank(self) -> int:
        return self.rows - self.rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors by elementary integer row and column operations.

    The transforms are not kept.  The cokernel of ``m`` (as a map from
    Z^cols to Z^rows) is ``Z^cokernel_rank`` plus ``Z/d`` for each torsion
    factor.
    """
    nrows = len(m)
    ncols = _check_rectangular(m)
    a = [list(row) for row in m]
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nrows)
              for j in range(t, ncols) if a[i][j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    done = False
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
                _, i, j = min(cands)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return SmithForm(tuple(diag), nrows, ncols)


def gcd_of_maximal_minors(m: Sequence[Sequence[int]]) -> int:
    """Product of the nonzero invariant factors; the lattice index of the
    row span of a full-row-rank matrix inside its saturation."""
    out = 1
    for d in smith_normal_form(m).factors:
        out *= d
    return out


def unimodular_column_reduction(q: Sequence[int]) -> list[list[int]]:
    """A unimodular matrix ``u`` with ``u @ q = (g, 0, ..., 0)``, ``g = gcd(q) >= 0``."""
    n = len(q)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    x = list(q)
    while True:
        nz = [i for i in range(n) if x[i] != 0]
        if not nz:
            return u
        i = min(nz, key=lambda k: (abs(x[k]), k))
        if i != 0:
            x[0], x[i] = x[i], x[0]
            u[0], u[i] = u[i], u[0]
        if x[0] < 0:
            x[0] = -x[0]
            u[0] = [-e for e in u[0]]
        finished = True
        for k in range(1, n):
            if x[k]:
                f = x[k] // x[0]
                x[k] -= f * x[0]
                u[k] = [a - f * b for a, b in zip(u[k], u[0])]
                if x[k]:
                    finished = False
        if finished:
            return u
