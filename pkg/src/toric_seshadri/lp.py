"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's rule.  Feasibility answers come with a certificate that
:func:`verify_certificate` re-checks by substitution: either a point, or a
Farkas multiplier vector ``y`` on the rows.

Farkas convention, for rows ``a_i . x (sense_i) b_i`` and bounds ``x_j >= l_j``
(or ``x_j`` free): ``y_i >= 0`` on ``>=`` rows, ``y_i <= 0`` on ``<=`` rows,
``y_i`` free on ``=`` rows; with ``c = A^T y`` we need ``c_j = 0`` on free
variables, ``c_j <= 0`` on bounded ones, and ``sum_j c_j l_j < y . b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

LE, EQ, GE = "<=", "=", ">="
_SENSES = (LE, EQ, GE)


class DimensionMismatch(ValueError):
    pass


class Status(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"


def _frac_tuple(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class LPProblem:
    A: tuple
    b: tuple
    senses: tuple
    lower: tuple  # Fraction per variable, or None for a free variable
    objective: Optional[tuple] = None
    maximize: bool = False

    @classmethod
    def build(cls, A: Sequence[Sequence], b: Sequence, senses: Sequence[str],
              lower: Sequence | None = None, objective: Sequence | None = None,
              maximize: bool = False) -> "LPProblem":
        A = tuple(_frac_tuple(row) for row in A)
        nvars = len(A[0]) if A else (len(lower) if lower is not None else 0)
        if lower is None:
            lower = (Fraction(0),) * nvars
        lower = tuple(None if l is None else Fraction(l) for l in lower)
        obj = None if objective is None else _frac_tuple(objective)
        return cls(A, _frac_tuple(b), tuple(senses), lower, obj, maximize)

    def __post_init__(self):
        n = len(self.lower)
        if len(self.b) != len(self.A) or len(self.senses) != len(self.A):
            raise DimensionMismatch("rows of A, b and senses differ in length")
        if any(len(row) != n for row in self.A):
            raise DimensionMismatch("every row of A needs %d entries" % n)
        if any(s not in _SENSES for s in self.senses):
            raise ValueError("row senses must be one of %r" % (_SENSES,))
        if self.objective is not None and len(self.objective) != n:
            raise DimensionMismatch("objective length differs from variable count")

    @property
    def nvars(self) -> int:
        return len(self.lower)


@dataclass(frozen=True)
class LPCertificate:
    status: Status
    point: Optional[tuple] = None
    farkas: Optional[tuple] = None


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Optional[Fraction] = None
    point: Optional[tuple] = None
    certificate: Optional[LPCertificate] = field(default=None, repr=False)


class _Tableau:
    """Tableau for ``min c.y  s.t.  M y = r, y >= 0`` with ``r >= 0``."""

    def __init__(self, M: list[list[Fraction]], r: list[Fraction]):
        self.m = len(M)
        self.n = len(M[0]) if M else 0
        # structural columns, then one artificial per row
        self.rows = [M[i] + [Fraction(int(i == k)) for k in range(self.m)] + [r[i]]
                     for i in range(self.m)]
        self.basis = [self.n + i for i in range(self.m)]
        self.ncols = self.n + self.m

    def _pivot(self, obj: list[Fraction], i: int, j: int) -> None:
        row = self.rows[i]
        inv = 1 / row[j]
        row = [x * inv for x in row]
        self.rows[i] = row
        for k, other in enumerate(self.rows):
            if k != i and other[j] != 0:
                f = other[j]
                self.rows[k] = [x - f * y for x, y in zip(other, row)]
        if obj[j] != 0:
            f = obj[j]
            obj[:] = [x - f * y for x, y in zip(obj, row)]
        self.basis[i] = j

    def run(self, obj: list[Fraction], allowed: int) -> bool:
        """Bland's rule iterations; False when the objective is unbounded."""
        while True:
            j = next((c for c in range(allowed) if obj[c] < 0), None)
            if j is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[j] > 0:
                    ratio = row[-1] / row[j]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self._pivot(obj, best[1], j)

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        obj = list(cost) + [Fraction(0)] * (self.ncols + 1 - len(cost))
        for i, row in enumerate(self.rows):
            cb = obj[self.basis[i]]
            if cb != 0:
                obj = [x - cb * y for x, y in zip(obj, row)]
        return obj

    def phase_one(self) -> bool:
        cost = [Fraction(0)] * self.n + [Fraction(1)] * self.m
        obj = self.reduced_costs(cost)
        self.run(obj, self.ncols)
        if -obj[-1] != 0:
            return False
        # drive artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(self.rows):
            if self.basis[i] >= self.n:
                j = next((c for c in range(self.n) if self.rows[i][c] != 0), None)
                if j is None:
                    del self.rows[i]
                    del self.basis[i]
                    continue
                self._pivot(obj, i, j)
            i += 1
        self.m = len(self.rows)
        return True

    def values(self) -> list[Fraction]:
        y = [Fraction(0)] * self.n
        for i, k in enumerate(self.basis):
            if k < self.n:
                y[k] = self.rows[i][-1]
        return y


def _standard_form(p: LPProblem):
    """Rewrite ``p`` as ``M y = r, y >= 0, r >= 0``.

    Returns the matrix, the rhs, and a map from standard columns back to
    original variables: ``x_j = lower_j + y_plus - y_minus``.
    """
    colmap: list[tuple[int, int]] = []  # (original var, +1/-1)
    for j, l in enumerate(p.lower):
        colmap.append((j, 1))
        if l is None:
            colmap.append((j, -1))
    nslack = sum(1 for s in p.senses if s != EQ)
    M, r = [], []
    s_idx = 0
    for row, rhs, sense in zip(p.A, p.b, p.senses):
        shift = sum((a * l for a, l in zip(row, p.lower) if l is not None), Fraction(0))
        out = [row[j] * sgn for j, sgn in colmap]
        slack = [Fraction(0)] * nslack
        if sense != EQ:
            slack[s_idx] = Fraction(1) if sense == LE else Fraction(-1)
            s_idx += 1
        out += slack
        rhs = rhs - shift
        if rhs < 0:
            out = [-x for x in out]
            rhs = -rhs
        M.append(out)
        r.append(rhs)
    return M, r, colmap


def _recover(p: LPProblem, y: Sequence[Fraction], colmap) -> tuple[Fraction, ...]:
    x = [Fraction(0) if l is None else l for l in p.lower]
    for k, (j, sgn) in enumerate(colmap):
        x[j] += sgn * y[k]
    return tuple(x)


def _phase_one(p: LPProblem):
    M, r, colmap = _standard_form(p)
    if not M:
        return None, [], colmap
    t = _Tableau(M, r)
    if not t.phase_one():
        return None, M, colmap
    return t, M, colmap


def farkas_system(p: LPProblem) -> LPProblem:
    """The alternative system whose feasible points are Farkas vectors for ``p``.

    Rows of ``p`` with sense ``<=`` are negated so that every inequality
    multiplier is non-negative; :func:`solve_feasibility` undoes the flip.
    """
    m, n = len(p.A), p.nvars
    flip = [-1 if s == LE else 1 for s in p.senses]
    A = [[p.A[i][j] * flip[i] for j in range(n)] for i in range(m)]
    b = [p.b[i] * flip[i] for i in range(m)]
    rows, rhs, senses = [], [], []
    for j, l in enumerate(p.lower):
        rows.append([A[i][j] for i in range(m)])
        rhs.append(0)
        senses.append(EQ if l is None else LE)
    # y.b - sum_j l_j (A^T y)_j >= 1
    last = []
    for i in range(m):
        shift = sum((A[i][j] * l for j, l in enumerate(p.lower) if l is not None), Fraction(0))
        last.append(b[i] - shift)
    rows.append(last)
    rhs.append(1)
    senses.append(GE)
    lower = [None if s == EQ else Fraction(0) for s in p.senses]
    return LPProblem.build(rows, rhs, senses, lower)


def solve_feasibility(p: LPProblem) -> LPCertificate:
    """Exact feasible point, or an exact Farkas certificate of infeasibility."""
    t, _, colmap = _phase_one(p)
    if t is not None or not p.A:
        y = t.values() if t is not None else [Fraction(0)] * len(colmap)
        return LPCertificate(Status.FEASIBLE, point=_recover(p, y, colmap))
    alt = farkas_system(p)
    ta, _, altmap = _phase_one(alt)
    if ta is None:
        raise ArithmeticError("neither the system nor its Farkas alternative is feasible")
    z = _recover(alt, ta.values(), altmap)
    y = tuple(-zi if s == LE else zi for zi, s in zip(z, p.senses))
    return LPCertificate(Status.INFEASIBLE, farkas=y)


def solve_optimize(p: LPProblem) -> LPResult:
    if p.objective is None:
        raise ValueError("solve_optimize needs an objective")
    t, _, colmap = _phase_one(p)
    if t is None and p.A:
        return LPResult(Status.INFEASIBLE, certificate=solve_feasibility(p))
    sign = -1 if p.maximize else 1
    cost = [sign * p.objective[j] * s for j, s in colmap]
    if t is None:
        # no rows: bounded only if every improving direction is blocked
        if any(c < 0 for c in cost):
            return LPResult(Status.UNBOUNDED)
        x = _recover(p, [Fraction(0)] * len(colmap), colmap)
    else:
        obj = t.reduced_costs(cost)
        if not t.run(obj, t.n):
            return LPResult(Status.UNBOUNDED)
        x = _recover(p, t.values(), colmap)
    value = sum((c * xi for c, xi in zip(p.objective, x)), Fraction(0))
    return LPResult(Status.OPTIMAL, value, x)


def check_point(p: LPProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != p.nvars:
        return False
    for l, xi in zip(p.lower, x):
        if l is not None and xi < l:
            return False
    for row, rhs, sense in zip(p.A, p.b, p.senses):
        lhs = sum((a * xi for a, xi in zip(row, x)), Fraction(0))
        if sense == LE and lhs > rhs:
            return False
        if sense == GE and lhs < rhs:
            return False
        if sense == EQ and lhs != rhs:
            return False
    return True


def check_farkas(p: LPProblem, y: Sequence[Fraction]) -> bool:
    if len(y) != len(p.A):
        return False
    for yi, s in zip(y, p.senses):
        if (s == GE and yi < 0) or (s == LE and yi > 0):
            return False
    bound = Fraction(0)
    for j, l in enumerate(p.lower):
        c = sum((p.A[i][j] * y[i] for i in range(len(y))), Fraction(0))
        if l is None:
            if c != 0:
                return False
        else:
            if c > 0:
                return False
            bound += c * l
    yb = sum((yi * bi for yi, bi in zip(y, p.b)), Fraction(0))
    return bound < yb


def verify_certificate(p: LPProblem, cert: LPCertificate) -> bool:
    """Re-check a solver answer by direct substitution."""
    if cert.status == Status.FEASIBLE:
        return cert.point is not None and check_point(p, cert.point)
    if cert.status == Status.INFEASIBLE:
        return cert.farkas is not None and check_farkas(p, cert.farkas)
    return False
