"""Intersection numbers of torus-invariant curves with invariant divisors.

Classes are recorded numerically as the vector ``(C . D_rho)_rho``.  Any
such vector satisfies ``sum_rho (C . D_rho) v_rho = 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .exact_math import integer_scale, kernel_basis, transpose
from .fan import Fan, FanError, IncompleteFan, Wall, is_complete, multiplicity
from .positivity import PositiveRelation


class NotAWall(FanError):
    kind = "NotAWall"


class NonIntegerCoefficients(ValueError):
    pass


class DimensionTooSmall(FanError):
    kind = "DimensionTooSmall"


@dataclass(frozen=True)
class CurveClass:
    intersections: tuple[Fraction, ...]

    def degree(self, divisor: Sequence) -> Fraction:
        return sum((Fraction(a) * c for a, c in zip(divisor, self.intersections)), Fraction(0))

    def is_relation(self, f: Fan) -> bool:
        return not any(sum(c * r[k] for c, r in zip(self.intersections, f.rays))
                       for k in range(f.dim))

    def proportional_to(self, other: "CurveClass") -> bool:
        """Equal up to a positive rational factor."""
        pairs = list(zip(self.intersections, other.intersections))
        ref = next(((a, b) for a, b in pairs if a or b), None)
        if ref is None:
            return True
        a0, b0 = ref
        if a0 == 0 or b0 == 0 or (a0 > 0) != (b0 > 0):
            return False
        return all(a * b0 == b * a0 for a, b in pairs)


def _find_wall(f: Fan, w) -> Wall:
    key = tuple(sorted(w.rays if isinstance(w, Wall) else w))
    for wall in f.walls:
        if wall.rays == key:
            return wall
    raise NotAWall("%s is not shared by two maximal cones" % list(key))


def _wall_kernel(f: Fan, wall: Wall) -> list[Fraction]:
    """Kernel vector of (v, v', u_1..u_{n-1}) with positive coefficients on v, v'."""
    a, b = wall.opposite()
    idx = [a, b] + list(wall.rays)
    (k,) = kernel_basis(transpose(f.cone_rays(idx)))
    if k[0] < 0:
        k = tuple(-x for x in k)
    out = [Fraction(0)] * f.nrays
    for i, x in zip(idx, k):
        out[i] = x
    return out


def wall_curve_class(f: Fan, wall) -> CurveClass:
    """Class of the invariant curve of a wall.

    Normalized so the opposite ray of each adjacent cone gets
    ``mult(wall) / mult(cone)``, which is 1 on both sides for smooth fans.
    """
    if not is_complete(f):
        raise IncompleteFan("wall curves are computed on complete fans")
    wall = _find_wall(f, wall)
    k = _wall_kernel(f, wall)
    a, b = wall.opposite()
    mw = multiplicity(f, wall.rays)
    target = Fraction(mw, multiplicity(f, wall.cones[0]))
    scale = target / k[a]
    out = tuple(x * scale for x in k)
    if out[b] != Fraction(mw, multiplicity(f, wall.cones[1])):
        raise ArithmeticError("wall normalization is inconsistent at %r" % (wall,))
    return CurveClass(out)


def all_wall_curves(f: Fan) -> list[tuple[Wall, CurveClass]]:
    if not is_complete(f):
        raise IncompleteFan("wall curves are computed on complete fans")
    return [(w, wall_curve_class(f, w)) for w in f.walls]


def wall_relation(f: Fan, wall) -> Optional[PositiveRelation]:
    """The wall's own linear relation as a positive relation with integer
    coefficients, when no wall ray enters with a negative coefficient."""
    wall = _find_wall(f, wall)
    k = _wall_kernel(f, wall)
    if any(x < 0 for x in k):
        return None
    ints = integer_scale(k)
    idx = tuple(i for i, x in enumerate(ints) if x)
    return PositiveRelation(idx, tuple(Fraction(ints[i]) for i in idx))


def relation_curve_class(f: Fan, rel: PositiveRelation) -> CurveClass:
    """Class of the closure of a one-parameter family built from a positive
    integer relation: it meets ``D_i`` with multiplicity ``n_i`` on the
    relation's rays and misses the other invariant divisors."""
    if any(Fraction(a).denominator != 1 for a in rel.coefficients):
        raise NonIntegerCoefficients("relation coefficients must be integers")
    if not rel.verify(f):
        raise ValueError("not a positive relation among the rays: %r" % (rel,))
    out = [Fraction(0)] * f.nrays
    for i, a in zip(rel.indices, rel.coefficients):
        out[i] = Fraction(a)
    return CurveClass(tuple(out))


@dataclass(frozen=True)
class NefReport:
    nef: bool
    wall: Optional[Wall] = None
    value: Optional[Fraction] = None

    def __bool__(self):
        return self.nef


def is_nef(f: Fan, divisor: Sequence) -> NefReport:
    """Non-negative on every wall curve; the first negative wall is the witness."""
    if len(divisor) != f.nrays:
        raise ValueError("divisor needs one coefficient per ray")
    for w, c in all_wall_curves(f):
        d = c.degree(divisor)
        if d < 0:
            return NefReport(False, w, d)
    return NefReport(True)


class DivisorSign(str, Enum):
    NON_NEGATIVE = "nonnegative"
    NEGATIVE_INFINITY = "-infinity"


def divisor_seshadri_sign_at_identity(f: Fan, divisor: Sequence) -> DivisorSign:
    """Negative Seshadri constants at the identity are always minus infinity;
    decided here by the nef test on invariant curves."""
    if f.dim < 2:
        raise DimensionTooSmall("the dichotomy needs dimension at least 2")
    return DivisorSign.NON_NEGATIVE if is_nef(f, divisor) else DivisorSign.NEGATIVE_INFINITY


_RAT = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"k"`` or ``"p/q"``; decimals and floats are rejected."""
    text = text.strip()
    if not _RAT.match(text):
        raise ValueError("not an exact rational: %r" % text)
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
