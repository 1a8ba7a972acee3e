"""Positive relations among ray generators, primitive collections, and the
sign of the Seshadri constant of the tangent sheaf at the torus identity.

The sign is decided combinatorially: it is positive exactly when every
vanishing positive combination of distinct rays involves at least ``n + 1``
of them, and zero otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact_math import kernel_basis, rref, transpose
from .fan import (
    Fan,
    IncompleteFan,
    is_complete,
    is_projective,
    is_smooth,
    star_subdivision,
)
from .lp import EQ, LPProblem, Status, solve_feasibility, verify_certificate


def colex_key(indices: Sequence[int]):
    return (len(indices), tuple(reversed(indices)))


@dataclass(frozen=True)
class PositiveRelation:
    indices: tuple[int, ...]
    coefficients: tuple[Fraction, ...]

    def verify(self, f: Fan) -> bool:
        if len(self.indices) != len(self.coefficients) or not self.indices:
            return False
        if len(set(self.indices)) != len(self.indices):
            return False
        if any(a <= 0 for a in self.coefficients):
            return False
        total = [Fraction(0)] * f.dim
        for i, a in zip(self.indices, self.coefficients):
            for k, x in enumerate(f.rays[i]):
                total[k] += a * x
        return not any(total)


@dataclass(frozen=True)
class DaggerReport:
    holds: bool
    witness: Optional[PositiveRelation] = None


class SeshadriSign(str, Enum):
    POSITIVE = "positive"
    ZERO = "zero"


def _circuit(f: Fan, subset: Sequence[int]) -> Optional[PositiveRelation]:
    """The one-signed circuit carried by ``subset``, if it is one."""
    cols = f.cone_rays(subset)
    _, pivots = rref(transpose(cols))
    if len(pivots) != len(subset) - 1:
        return None
    (k,) = kernel_basis(transpose(cols))
    if any(x == 0 for x in k):
        return None
    if all(x < 0 for x in k):
        k = tuple(-x for x in k)
    elif not all(x > 0 for x in k):
        return None
    smallest = min(k)
    return PositiveRelation(tuple(subset), tuple(x / smallest for x in k))


def iter_positive_circuits(f: Fan, max_support: int):
    """Positive circuits in order of support size, colexicographic within a size."""
    for size in range(2, min(max_support, f.dim + 1) + 1):
        subsets = sorted(itertools.combinations(range(f.nrays), size), key=colex_key)
        for s in subsets:
            rel = _circuit(f, s)
            if rel is not None:
                yield rel


def positive_circuits(f: Fan, max_support: int) -> list[PositiveRelation]:
    """All inclusion-minimal ray subsets of size at most ``max_support``
    carrying an all-positive linear dependence, smallest coefficient 1."""
    return list(iter_positive_circuits(f, max_support))


def _require_complete(f: Fan):
    if not is_complete(f):
        raise IncompleteFan("the sign at the identity is only defined for complete fans")


def check_dagger(f: Fan) -> DaggerReport:
    """Does every positive relation among distinct rays use more than ``dim`` rays?"""
    _require_complete(f)
    for rel in iter_positive_circuits(f, f.dim):
        if not rel.verify(f):
            raise ArithmeticError("circuit %r failed re-verification" % (rel,))
        return DaggerReport(False, rel)
    return DaggerReport(True)


def subset_relation_problem(f: Fan, subset: Sequence[int]) -> LPProblem:
    """``sum a_i v_i = 0`` with every ``a_i >= 1``."""
    A = [[f.rays[i][k] for i in subset] for k in range(f.dim)]
    return LPProblem.build(A, [0] * f.dim, [EQ] * f.dim, [1] * len(subset))


def check_dagger_lp(f: Fan) -> DaggerReport:
    """Independent decision path: one feasibility LP per ray subset of size <= dim."""
    _require_complete(f)
    for size in range(1, f.dim + 1):
        for s in sorted(itertools.combinations(range(f.nrays), size), key=colex_key):
            p = subset_relation_problem(f, s)
            cert = solve_feasibility(p)
            if not verify_certificate(p, cert):
                raise ArithmeticError("LP certificate failed re-verification")
            if cert.status == Status.FEASIBLE:
                return DaggerReport(False, PositiveRelation(s, cert.point))
    return DaggerReport(True)


def tangent_seshadri_sign_at_identity(f: Fan) -> SeshadriSign:
    """Positive iff the fan satisfies the positive-relation condition; never negative."""
    sign = SeshadriSign.POSITIVE if check_dagger(f).holds else SeshadriSign.ZERO
    assert sign in (SeshadriSign.POSITIVE, SeshadriSign.ZERO)
    return sign


def spans_cone(f: Fan, indices: Iterable[int]) -> bool:
    return f.spans_cone(indices)


def primitive_collections(f: Fan) -> list[tuple[int, ...]]:
    """Minimal non-faces of the simplicial complex of cones, in lexicographic order.

    Candidates of size ``k + 1`` are grown from faces of size ``k``; a
    candidate is kept when all of its ``k``-subsets are faces and it is not.
    """
    faces_by_size: dict[int, set] = {}
    for c in f.max_cones:
        for k in range(len(c) + 1):
            for s in itertools.combinations(c, k):
                faces_by_size.setdefault(k, set()).add(s)
    out = [(i,) for i in range(f.nrays) if (i,) not in faces_by_size.get(1, set())]
    for k in range(1, max(faces_by_size) + 1):
        faces = faces_by_size.get(k, set())
        bigger = faces_by_size.get(k + 1, set())
        for face in faces:
            for j in range(face[-1] + 1, f.nrays):
                cand = face + (j,)
                if cand in bigger:
                    continue
                if all(cand[:m] + cand[m + 1:] in faces for m in range(len(cand))):
                    out.append(cand)
    return sorted(out)


def find_zero_sum_primitive_collection(f: Fan) -> Optional[tuple[int, ...]]:
    hits = [b for b in primitive_collections(f)
            if not any(sum(f.rays[i][k] for i in b) for k in range(f.dim))]
    return min(hits, key=colex_key) if hits else None


def is_projective_space_fan(f: Fan) -> bool:
    n = f.dim
    if f.nrays != n + 1:
        return False
    if {frozenset(c) for c in f.max_cones} != {
            frozenset(s) for s in itertools.combinations(range(n + 1), n)}:
        return False
    return bool(is_complete(f)) and bool(is_smooth(f))


@dataclass
class Theorem1Report:
    name: str
    status: str  # "passed", "failed" or "not_applicable"
    checks: list = field(default_factory=list)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_dict(self) -> dict:
        out = {"fan": self.name, "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        out["checks"] = [{"check": name, "ok": ok, "detail": detail}
                         for name, ok, detail in self.checks]
        return out


def verify_theorem1(f: Fan) -> Theorem1Report:
    """On smooth projective fans: positive sign at the identity exactly for P^n,
    and a primitive collection summing to zero always exists."""
    rep = Theorem1Report(f.name, "not_applicable")
    if not is_complete(f):
        rep.reason = "not complete"
        return rep
    if not is_smooth(f):
        rep.reason = "not smooth"
        return rep
    if not is_projective(f):
        rep.reason = "not projective"
        return rep
    dagger = check_dagger(f)
    sign = SeshadriSign.POSITIVE if dagger.holds else SeshadriSign.ZERO
    pn = is_projective_space_fan(f)
    rep.checks.append(("sign_matches_projective_space",
                       (sign == SeshadriSign.POSITIVE) == pn,
                       "sign=%s projective_space=%s" % (sign.value, pn)))
    coll = find_zero_sum_primitive_collection(f)
    rep.checks.append(("zero_sum_primitive_collection", coll is not None,
                       None if coll is None else list(coll)))
    if dagger.witness is not None:
        rep.checks.append(("witness_reverifies", dagger.witness.verify(f)
                           and len(dagger.witness.indices) <= f.dim,
                           list(dagger.witness.indices)))
    rep.status = "passed" if all(ok for _, ok, _ in rep.checks) else "failed"
    return rep


# -- mutation scan --------------------------------------------------------


@dataclass(frozen=True)
class ScanEntry:
    name: str
    smooth: bool
    complete: bool
    projective: Optional[bool]
    dagger: Optional[bool]
    projective_space: bool

    @property
    def is_finding(self) -> bool:
        return self.smooth and self.complete and self.dagger is True and not self.projective_space

    def to_dict(self) -> dict:
        return {"fan": self.name, "smooth": self.smooth, "complete": self.complete,
                "projective": self.projective, "dagger": self.dagger,
                "projective_space": self.projective_space}


@dataclass
class ScanReport:
    entries: list
    findings: list
    candidates: int = 0
    distinct: int = 0
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "corpus": [e.to_dict() for e in self.entries],
            "mutation_search": {"seed": self.seed, "candidates": self.candidates,
                                "distinct_fans": self.distinct},
            "findings": self.findings,
        }


def _classify_for_scan(f: Fan, with_projective: bool) -> ScanEntry:
    complete = bool(is_complete(f))
    smooth = bool(is_smooth(f))
    projective = dagger = None
    if complete:
        dagger = check_dagger(f).holds
        if with_projective:
            projective = is_projective(f).projective
    return ScanEntry(f.name, smooth, complete, projective, dagger, is_projective_space_fan(f))


def _fan_key(f: Fan):
    return frozenset(frozenset(f.rays[i] for i in c) for c in f.max_cones)


def question4_scan(corpus: Sequence[Fan], budget: int = 0, seed: int = 0,
                   max_height: int = 5, max_rays: int = 12) -> ScanReport:
    """Look for smooth complete fans other than P^n whose positive relations
    all have support larger than the dimension.

    Besides the corpus itself, ``budget`` candidates are drawn by star
    subdividing smooth complete fans at the sum of the rays of a random face
    of a random maximal cone (which keeps the fan smooth), skipping new rays
    with a coordinate above ``max_height`` in absolute value.
    """
    entries, findings = [], []
    pool = []
    for f in corpus:
        e = _classify_for_scan(f, with_projective=True)
        entries.append(e)
        if e.is_finding:
            findings.append({"fan": f.to_dict(), "source": f.name})
        if e.smooth and e.complete and f.dim >= 2 and f.nrays < max_rays:
            pool.append(f)
    rng = random.Random(seed)
    seen = {_fan_key(f) for f in pool}
    distinct = 0
    for _ in range(budget):
        if not pool:
            break
        base = rng.choice(pool)
        cone = rng.choice(base.max_cones)
        size = rng.randint(2, len(cone))
        face = sorted(rng.sample(cone, size))
        v = tuple(sum(base.rays[i][k] for i in face) for k in range(base.dim))
        if max(abs(x) for x in v) > max_height:
            continue
        cand = star_subdivision(base, v, name="%s+%s" % (base.name, ",".join(map(str, v))))
        key = _fan_key(cand)
        if key in seen:
            continue
        seen.add(key)
        distinct += 1
        e = _classify_for_scan(cand, with_projective=False)
        if e.is_finding:
            findings.append({"fan": cand.to_dict(), "source": cand.name})
        if e.smooth and e.complete and cand.nrays < max_rays:
            pool.append(cand)
    return ScanReport(entries, findings, budget, distinct, seed)
