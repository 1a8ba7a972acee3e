"""Simplicial fans: the data type, validation, classification and generators.

A fan is stored as its primitive ray generators plus the maximal cones,
each a sorted tuple of ray indices.  Cones are simplicial by construction,
so every subset of a maximal cone's indices is a face.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .exact_math import (
    IntVec,
    determinant,
    dot,
    gcd_of_maximal_minors,
    primitive,
    rank,
    smith_normal_form,
    solve,
    transpose,
    unimodular_column_reduction,
    vector_gcd,
)
from .lp import GE, LE, EQ, LPProblem, Status, solve_feasibility, verify_certificate

log = logging.getLogger(__name__)


class FanError(ValueError):
    """Base class; ``kind`` is the stable name used in reports."""

    kind = "FanError"

    def __str__(self):
        msg = super().__str__()
        return "%s: %s" % (self.kind, msg) if msg else self.kind


class FanFormatError(FanError):
    kind = "FanFormatError"


class NonPrimitiveRay(FanError):
    kind = "NonPrimitiveRay"


class DuplicateRay(FanError):
    kind = "DuplicateRay"


class DependentConeRays(FanError):
    kind = "DependentConeRays"


class NestedCones(FanError):
    kind = "NestedCones"


class ConeOverlap(FanError):
    kind = "ConeOverlap"

    def __init__(self, first, second):
        super().__init__("cones %s and %s do not meet in a common face"
                         % (list(first), list(second)))
        self.cones = (tuple(first), tuple(second))


class DanglingRay(FanError):
    kind = "DanglingRay"


class IncompleteFan(FanError):
    kind = "IncompleteFan"


class IllFormedWeights(FanError):
    kind = "IllFormedWeights"


class RayOutsideSupport(FanError):
    kind = "RayOutsideSupport"


Cone = tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[IntVec, ...]
    max_cones: tuple[Cone, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones",
                           tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        if self.dim < 1:
            raise FanFormatError("dim must be positive")
        for r in self.rays:
            if len(r) != self.dim:
                raise FanFormatError("ray %r does not have %d coordinates" % (r, self.dim))
        for c in self.max_cones:
            if not c:
                raise FanFormatError("empty maximal cone")
            if len(set(c)) != len(c):
                raise FanFormatError("repeated index in cone %r" % (c,))
            if c[0] < 0 or c[-1] >= len(self.rays):
                raise FanFormatError("cone %r refers to a missing ray" % (c,))

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: Iterable[int]) -> list[IntVec]:
        return [self.rays[i] for i in cone]

    @cached_property
    def _cone_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(c) for c in self.max_cones)

    def spans_cone(self, indices: Iterable[int]) -> bool:
        s = frozenset(indices)
        if any(i < 0 or i >= self.nrays for i in s):
            raise IndexError("ray index out of range in %r" % (sorted(s),))
        return any(s <= c for c in self._cone_sets)

    @cached_property
    def walls(self) -> tuple["Wall", ...]:
        """Codimension-one faces shared by exactly two full-dimensional cones."""
        owners: dict[Cone, list[Cone]] = {}
        for c in self.max_cones:
            if len(c) != self.dim:
                continue
            for k in range(len(c)):
                facet = c[:k] + c[k + 1:]
                owners.setdefault(facet, []).append(c)
        out = [Wall(facet, (cs[0], cs[1])) for facet, cs in owners.items() if len(cs) == 2]
        return tuple(sorted(out, key=lambda w: w.rays))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> "Fan":
        """Build a fan from the interchange schema, primitivizing rays with a warning."""
        try:
            dim = data["dim"]
            rays = data["rays"]
            cones = data["max_cones"]
        except (KeyError, TypeError) as exc:
            raise FanFormatError("missing field %s" % exc) from None
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise FanFormatError("dim must be an integer")
        fixed = []
        for r in rays:
            if not isinstance(r, list) or not all(isinstance(x, int) for x in r):
                raise FanFormatError("rays must be integer lists")
            if any(r) and vector_gcd(r) != 1:
                log.warning("ray %s is not primitive; replaced by %s", r, list(primitive(r)))
                r = list(primitive(r))
            fixed.append(r)
        if not isinstance(cones, list) or not all(
                isinstance(c, list) and all(isinstance(i, int) for i in c) for c in cones):
            raise FanFormatError("max_cones must be integer lists")
        return cls(dim, fixed, cones, name=name)


@dataclass(frozen=True)
class Wall:
    rays: Cone
    cones: tuple[Cone, Cone]

    def opposite(self) -> tuple[int, int]:
        """Index of the ray of each adjacent cone that is not on the wall."""
        a = next(i for i in self.cones[0] if i not in self.rays)
        b = next(i for i in self.cones[1] if i not in self.rays)
        return a, b


def load_fan(path) -> Fan:
    path = Path(path)
    with open(path) as fh:
        data = json.load(fh)
    return Fan.from_dict(data, name=path.stem)


def dump_fan(f: Fan, path) -> None:
    with open(path, "w") as fh:
        fh.write(f.to_json() + "\n")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    # separating functional for each pair of maximal cones, keyed by cone index pair
    separators: dict = field(default_factory=dict, compare=False)


def separation_problem(f: Fan, first: Cone, second: Cone) -> LPProblem:
    shared = set(first) & set(second)
    rows, rhs, senses = [], [], []
    for i in first:
        rows.append(f.rays[i])
        if i in shared:
            rhs.append(0)
            senses.append(EQ)
        else:
            rhs.append(1)
            senses.append(GE)
    for i in second:
        if i not in shared:
            rows.append(f.rays[i])
            rhs.append(-1)
            senses.append(LE)
    return LPProblem.build(rows, rhs, senses, [None] * f.dim)


def validate_fan(f: Fan) -> ValidationReport:
    """Check every fan invariant; raise the matching :class:`FanError` on failure.

    Each pair of maximal cones must admit a functional that vanishes on
    their shared rays and strictly separates the rest, which is exactly the
    statement that they intersect in a common face.
    """
    for i, r in enumerate(f.rays):
        if not any(r):
            raise NonPrimitiveRay("ray %d is zero" % i)
        if vector_gcd(r) != 1:
            raise NonPrimitiveRay("ray %d = %s" % (i, list(r)))
    seen = {}
    for i, r in enumerate(f.rays):
        if r in seen:
            raise DuplicateRay("rays %d and %d coincide" % (seen[r], i))
        seen[r] = i
    for c in f.max_cones:
        if rank(f.cone_rays(c)) != len(c):
            raise DependentConeRays("cone %s" % list(c))
    sets = [frozenset(c) for c in f.max_cones]
    for a, b in itertools.combinations(range(len(sets)), 2):
        if sets[a] <= sets[b] or sets[b] <= sets[a]:
            raise NestedCones("cones %s and %s" % (list(f.max_cones[a]), list(f.max_cones[b])))
    used = set().union(*sets) if sets else set()
    for i in range(f.nrays):
        if i not in used:
            raise DanglingRay("ray %d lies in no maximal cone" % i)
    separators = {}
    for a, b in itertools.combinations(range(len(sets)), 2):
        p = separation_problem(f, f.max_cones[a], f.max_cones[b])
        cert = solve_feasibility(p)
        if cert.status != Status.FEASIBLE:
            raise ConeOverlap(f.max_cones[a], f.max_cones[b])
        separators[(a, b)] = cert.point
    return ValidationReport(True, separators)


def multiplicity(f: Fan, cone: Iterable[int]) -> int:
    """Lattice index of the sublattice spanned by the cone's rays in its saturation."""
    rows = f.cone_rays(cone)
    if len(rows) == f.dim:
        return abs(determinant(rows))
    return gcd_of_maximal_minors(rows)


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    reason: str = ""
    witness: Optional[Cone] = None

    def __bool__(self):
        return self.complete


def is_complete(f: Fan) -> CompletenessReport:
    """Wall pairing test: full-dimensional cones, every facet in exactly two
    cones, connected adjacency graph."""
    for c in f.max_cones:
        if len(c) != f.dim:
            return CompletenessReport(False, "cone is not full-dimensional", c)
    owners: dict[Cone, list[int]] = {}
    for idx, c in enumerate(f.max_cones):
        for k in range(len(c)):
            owners.setdefault(c[:k] + c[k + 1:], []).append(idx)
    for facet in sorted(owners):
        if len(owners[facet]) != 2:
            return CompletenessReport(False, "facet lies in %d maximal cones" % len(owners[facet]),
                                      facet)
    if not f.max_cones:
        return CompletenessReport(False, "no cones")
    adj: dict[int, set] = {i: set() for i in range(len(f.max_cones))}
    for a, b in owners.values():
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(f.max_cones):
        missing = min(set(range(len(f.max_cones))) - seen)
        return CompletenessReport(False, "adjacency graph is disconnected", f.max_cones[missing])
    return CompletenessReport(True)


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    multiplicities: dict

    def __bool__(self):
        return self.smooth


def is_smooth(f: Fan) -> SmoothnessReport:
    mults = {c: multiplicity(f, c) for c in f.max_cones}
    return SmoothnessReport(all(m == 1 for m in mults.values()), mults)


@dataclass(frozen=True)
class ClassGroup:
    rank: int
    torsion: tuple[int, ...]


def class_group(f: Fan) -> ClassGroup:
    """Cokernel of ``m -> (<m, v_rho>)_rho``; its free rank is the Picard number."""
    snf = smith_normal_form(f.rays)
    return ClassGroup(snf.cokernel_rank, snf.torsion)


# -- projectivity ---------------------------------------------------------


def _wall_inequalities(f: Fan):
    """For each wall and each side: (cone, ray opposite across the wall,
    coefficients of that ray in terms of the cone's rays)."""
    out = []
    for w in f.walls:
        a, b = w.opposite()
        for cone, other in ((w.cones[0], b), (w.cones[1], a)):
            lam = solve(transpose(f.cone_rays(cone)), f.rays[other])
            out.append((cone, other, lam))
    return out


def projectivity_problem(f: Fan) -> LPProblem:
    """Unknowns are the support function's values ``h_rho`` on the rays."""
    rows = []
    for cone, other, lam in _wall_inequalities(f):
        row = [Fraction(0)] * f.nrays
        for i, l in zip(cone, lam):
            row[i] += l
        row[other] -= 1
        rows.append(row)
    return LPProblem.build(rows, [1] * len(rows), [GE] * len(rows), [None] * f.nrays)


@dataclass(frozen=True)
class ProjectivityReport:
    projective: bool
    ray_values: Optional[tuple] = None
    # linear functional per maximal cone
    functionals: Optional[dict] = None
    farkas: Optional[tuple] = None

    def __bool__(self):
        return self.projective


def support_functionals(f: Fan, values: Sequence[Fraction]) -> dict:
    return {c: solve(f.cone_rays(c), [values[i] for i in c]) for c in f.max_cones}


def verify_support_function(f: Fan, functionals: dict, margin=1) -> bool:
    """Direct substitution: cone functionals agree on shared rays and jump by
    at least ``margin`` at the opposite ray of every wall."""
    for w in f.walls:
        m0, m1 = functionals[w.cones[0]], functionals[w.cones[1]]
        if any(dot(m0, f.rays[i]) != dot(m1, f.rays[i]) for i in w.rays):
            return False
        a, b = w.opposite()
        if dot(m0, f.rays[b]) - dot(m1, f.rays[b]) < margin:
            return False
        if dot(m1, f.rays[a]) - dot(m0, f.rays[a]) < margin:
            return False
    return True


def is_projective(f: Fan) -> ProjectivityReport:
    """Search for a strictly convex piecewise linear support function.

    The certificate, when found, is one functional per maximal cone with
    ``m_sigma(v') >= m_sigma'(v') + 1`` across every wall.  Otherwise a
    Farkas vector for the wall inequalities is returned.
    """
    if not is_complete(f):
        raise IncompleteFan("projectivity is only decided for complete fans")
    p = projectivity_problem(f)
    cert = solve_feasibility(p)
    if not verify_certificate(p, cert):
        raise ArithmeticError("projectivity certificate failed re-verification")
    if cert.status == Status.FEASIBLE:
        fun = support_functionals(f, cert.point)
        if not verify_support_function(f, fun):
            raise ArithmeticError("support function failed re-verification")
        return ProjectivityReport(True, cert.point, fun)
    return ProjectivityReport(False, farkas=cert.farkas)


# -- generators -----------------------------------------------------------


def gen_projective_space(n: int) -> Fan:
    if n < 1:
        raise ValueError("n must be positive")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, rays, cones, name="p%d" % n)


def gen_weighted_projective(*weights: int) -> Fan:
    """Fan of P(q0, ..., qn): images of the unit vectors in Z^{n+1} / Z q."""
    q = [int(w) for w in weights]
    if len(q) < 2 or any(w <= 0 for w in q):
        raise IllFormedWeights("need at least two positive weights")
    for i in range(len(q)):
        if vector_gcd(q[:i] + q[i + 1:]) != 1:
            raise IllFormedWeights("weights other than q%d share a common factor" % i)
    n = len(q) - 1
    u = unimodular_column_reduction(q)
    # u q = e_0, so dropping coordinate 0 of u e_i presents the quotient lattice
    rays = [primitive([u[row][i] for row in range(1, n + 1)]) for i in range(n + 1)]
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, rays, cones, name="wps_" + "_".join(map(str, q)))


def gen_hirzebruch(r: int) -> Fan:
    rays = [(1, 0), (0, 1), (0, -1), (-1, r)]
    cones = [(0, 1), (1, 3), (2, 3), (0, 2)]
    return Fan(2, rays, cones, name="hirzebruch_%d" % r)


def gen_product(f: Fan, g: Fan) -> Fan:
    n = f.dim + g.dim
    rays = [tuple(r) + (0,) * g.dim for r in f.rays]
    rays += [(0,) * f.dim + tuple(r) for r in g.rays]
    cones = [tuple(a) + tuple(i + f.nrays for i in b) for a in f.max_cones for b in g.max_cones]
    name = "%s_x_%s" % (f.name, g.name) if f.name and g.name else ""
    return Fan(n, rays, cones, name=name)


def cone_containing(f: Fan, v: Sequence[int]) -> Optional[Cone]:
    """The face of the fan whose relative interior contains ``v``."""
    if not any(v):
        return ()
    for c in f.max_cones:
        lam = solve(transpose(f.cone_rays(c)), v)
        if lam is not None and all(x >= 0 for x in lam):
            return tuple(i for i, x in zip(c, lam) if x > 0)
    return None


def star_subdivision(f: Fan, v: Sequence[int], name: str = "") -> Fan:
    """Insert the primitive ray ``v`` and re-cone every maximal cone that
    contains the face carrying ``v`` in its relative interior."""
    v = tuple(int(x) for x in v)
    if len(v) != f.dim:
        raise FanFormatError("new ray has the wrong dimension")
    if not any(v) or vector_gcd(v) != 1:
        raise NonPrimitiveRay("subdivision ray %s" % list(v))
    tau = cone_containing(f, v)
    if tau is None:
        raise RayOutsideSupport("%s is not in the support" % list(v))
    if len(tau) == 1:
        raise RayOutsideSupport("%s is already a ray" % list(v))
    new = f.nrays
    cones = []
    for c in f.max_cones:
        if set(tau) <= set(c):
            for u in tau:
                cones.append(tuple(i for i in c if i != u) + (new,))
        else:
            cones.append(c)
    return Fan(f.dim, f.rays + (v,), cones, name=name)


def lattice_isomorphic(f: Fan, g: Fan) -> bool:
    """Is there a unimodular map carrying the rays of ``f`` onto those of ``g``
    and the cones onto the cones?  Brute force over images of a ray basis."""
    if f.dim != g.dim or f.nrays != g.nrays or len(f.max_cones) != len(g.max_cones):
        return False
    n = f.dim
    basis = None
    for idx in itertools.combinations(range(f.nrays), n):
        if determinant(f.cone_rays(idx)) != 0:
            basis = idx
            break
    if basis is None:
        return False
    src = f.cone_rays(basis)
    gindex = {r: i for i, r in enumerate(g.rays)}
    gcones = set(g._cone_sets)
    for images in itertools.permutations(range(g.nrays), n):
        dst = g.cone_rays(images)
        # A with A src_k = dst_k, i.e. A^T solves src A^T = dst
        cols = [solve(src, [d[j] for d in dst]) for j in range(n)]
        if any(c is None for c in cols):
            continue
        if any(x.denominator != 1 for c in cols for x in c):
            continue
        A = [[int(x) for x in c] for c in cols]
        if abs(determinant(A)) != 1:
            continue
        perm = []
        for r in f.rays:
            img = tuple(dot(row, r) for row in A)
            if img not in gindex:
                break
            perm.append(gindex[img])
        else:
            if {frozenset(perm[i] for i in c) for c in f.max_cones} == gcones:
                return True
    return False
