"""Independent reference computations for the test-suite.

None of these call into the package's algorithms; they use brute force,
cofactor expansion, sympy, or random sampling instead.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

import sympy


def cofactor_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n) if m[0][j])


def minors_invariant_factors(m):
    """Invariant factors as ratios of successive gcds of k x k minors."""
    rows, cols = len(m), len(m[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = gcd(g, cofactor_det([[m[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def sympy_kernel(columns):
    """Rational kernel of the matrix whose columns are ``columns``."""
    M = sympy.Matrix(columns).T
    return [tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v)
            for v in M.nullspace()]


def brute_positive_circuits(rays, max_support):
    """Minimal subsets with an all-positive dependence, found with sympy."""
    found = []
    for size in range(1, max_support + 1):
        for s in itertools.combinations(range(len(rays)), size):
            if any(set(c) <= set(s) for c, _ in found):
                continue
            ker = sympy_kernel([rays[i] for i in s])
            if len(ker) != 1:
                continue
            (k,) = ker
            if all(x > 0 for x in k) or all(x < 0 for x in k):
                k = tuple(abs(x) for x in k)
                found.append((s, tuple(x / min(k) for x in k)))
    return found


def brute_primitive_collections(nrays, max_cones):
    cones = [set(c) for c in max_cones]

    def face(s):
        return any(set(s) <= c for c in cones)

    out = []
    for size in range(1, nrays + 1):
        for s in itertools.combinations(range(nrays), size):
            if not face(s) and all(face(t) for t in itertools.combinations(s, size - 1)):
                out.append(s)
    return sorted(out)


def ray_shooting_complete(rays, max_cones, dim, samples=1000, seed=0, height=10**6):
    """Monte Carlo support test: every random direction must lie in a cone."""
    rng = random.Random(seed)
    inverses = []
    for c in max_cones:
        if len(c) != dim:
            inverses.append(None)
            continue
        M = sympy.Matrix([list(rays[i]) for i in c]).T
        inverses.append(M.inv())
    for _ in range(samples):
        x = sympy.Matrix([rng.randint(-height, height) for _ in range(dim)])
        hit = False
        for inv in inverses:
            if inv is None:
                continue
            lam = inv * x
            if all(v >= 0 for v in lam):
                hit = True
                break
        if not hit:
            return False
    return True


def vertex_enumeration_min(constraints, objective):
    """Minimum of a linear objective over a 2-variable polyhedron given as
    rows ``(a, b, c)`` meaning ``a x + b y >= c``; bounded case only."""
    best = None
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(constraints, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = Fraction(c1 * b2 - c2 * b1, det)
        y = Fraction(a1 * c2 - a2 * c1, det)
        if all(a * x + b * y >= c for a, b, c in constraints):
            val = objective[0] * x + objective[1] * y
            if best is None or val < best[0]:
                best = (val, (x, y))
    return best
