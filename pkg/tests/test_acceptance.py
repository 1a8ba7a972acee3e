"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""
import contextlib
import io
import json
import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toric_seshadri import cli
from toric_seshadri.corpus import (
    weighted_p1123,
    random_complete_fan,
    random_complete_fan_2d,
    standard_corpus,
)
from toric_seshadri.fan import (
    gen_hirzebruch,
    is_complete,
    is_projective,
    is_smooth,
    validate_fan,
    verify_support_function,
)
from toric_seshadri.intersection import (
    DivisorSign,
    all_wall_curves,
    divisor_seshadri_sign_at_identity,
    relation_curve_class,
    wall_curve_class,
    wall_relation,
)
from toric_seshadri.positivity import (
    SeshadriSign,
    check_dagger,
    check_dagger_lp,
    find_zero_sum_primitive_collection,
    is_projective_space_fan,
    tangent_seshadri_sign_at_identity,
    verify_theorem1,
)

from oracles import cofactor_det, ray_shooting_complete

CORPUS = standard_corpus()
# (criterion, line) pairs, printed in the terminal summary by conftest
RESULTS = []


def random_fans(count, seed):
    rng = random.Random(seed)
    return [random_complete_fan(rng, 2 + k % 2) for k in range(count)]


def report(number, title, failures, detail=""):
    line = "criterion %2d %s: %s%s" % (number, "PASS" if not failures else "FAIL", title,
                                      " (%s)" % detail if detail else "")
    RESULTS.append((number, line))
    assert not failures, failures[:5]


def test_criterion_01_weighted_projective_fixture():
    f = weighted_p1123()
    failures = []
    validate_fan(f)
    smooth = is_smooth(f)
    mults = Counter(smooth.multiplicities.values())
    oracle = Counter(abs(cofactor_det([list(f.rays[i]) for i in c])) for c in f.max_cones)
    if smooth or mults != Counter([1, 1, 2, 3]) or mults != oracle:
        failures.append(("multiplicities", dict(mults)))
    if not is_complete(f):
        failures.append("not complete")
    if not check_dagger(f).holds:
        failures.append("dagger fails")
    if tangent_seshadri_sign_at_identity(f) != SeshadriSign.POSITIVE:
        failures.append("sign not positive")
    if is_projective_space_fan(f):
        failures.append("recognized as P^3")
    report(1, "P(1,1,2,3): singular, complete, dagger holds, sign positive, not P^3", failures)


def test_criterion_02_hirzebruch_family():
    failures = []
    for r in range(6):
        f = gen_hirzebruch(r)
        rep = check_dagger(f)
        if rep.holds or rep.witness.indices != (1, 2) or rep.witness.coefficients != (1, 1):
            failures.append((r, "witness", rep))
        if wall_curve_class(f, [1]).degree([0, 1, 0, 0]) != -r:
            failures.append((r, "D2.D2"))
        sign = divisor_seshadri_sign_at_identity(f, [0, 1, 0, 0])
        if r >= 1 and sign != DivisorSign.NEGATIVE_INFINITY:
            failures.append((r, "divisor sign", sign))
    report(2, "Hirzebruch r=0..5: witness {v2,v3} (1,1), D2.D2=-r, sign -infinity", failures)


def test_criterion_03_theorem1_harness():
    start = time.perf_counter()
    failures, applicable = [], 0
    for f in CORPUS:
        rep = verify_theorem1(f)
        if rep.status == "not_applicable":
            continue
        applicable += 1
        if not rep.passed:
            failures.append((f.name, rep.to_dict()))
        sign = tangent_seshadri_sign_at_identity(f)
        expected = SeshadriSign.POSITIVE if is_projective_space_fan(f) else SeshadriSign.ZERO
        if sign != expected:
            failures.append((f.name, sign))
    elapsed = time.perf_counter() - start
    dims = {f.dim for f in CORPUS}
    if applicable < 10 or not {2, 3, 4} <= dims:
        failures.append(("corpus too small", applicable, dims))
    if elapsed >= 10:
        failures.append(("too slow", elapsed))
    report(3, "sign positive exactly on P^n over smooth projective corpus", failures,
           "%d applicable fans, %.2fs" % (applicable, elapsed))


def test_criterion_04_zero_sum_primitive_collections():
    failures, checked = [], 0
    for f in CORPUS:
        if not (is_complete(f) and is_smooth(f) and is_projective(f)):
            continue
        checked += 1
        pc = find_zero_sum_primitive_collection(f)
        if not pc or any(sum(f.rays[i][k] for i in pc) != 0 for k in range(f.dim)):
            failures.append((f.name, pc))
    report(4, "every smooth projective fan has a zero-sum primitive collection", failures,
           "%d fans" % checked)


def test_criterion_05_dagger_oracle_equivalence():
    fans = CORPUS + random_fans(120, seed=5)
    failures = [f.name for f in fans if check_dagger(f).holds != check_dagger_lp(f).holds]
    report(5, "circuit path agrees with per-subset LP path", failures,
           "%d fans" % len(fans))


def test_criterion_06_completeness_cross_check():
    failures = [f.name for f in CORPUS
                if bool(is_complete(f)) != ray_shooting_complete(f.rays, f.max_cones, f.dim,
                                                                  samples=1000, seed=6)]
    report(6, "wall-pairing completeness agrees with 1000-direction ray shooting", failures,
           "%d fans" % len(CORPUS))


def test_criterion_07_projectivity_certificates():
    failures = []
    for f in CORPUS:
        rep = is_projective(f)
        if rep and not verify_support_function(f, rep.functionals, margin=1):
            failures.append((f.name, "certificate"))
        if not rep and rep.farkas is None:
            failures.append((f.name, "no infeasibility certificate"))
    rng = random.Random(7)
    for k in range(60):
        f = random_complete_fan_2d(rng, nrays=3 + k % 6)
        rep = is_projective(f)
        if not rep or not verify_support_function(f, rep.functionals, margin=1):
            failures.append((f.name, f.rays))
    report(7, "support-function certificates re-verify; complete 2D fans projective", failures,
           "%d corpus + 60 random 2D fans" % len(CORPUS))


def test_criterion_08_curve_class_consistency():
    failures, walls, bridged = [], 0, 0
    for f in CORPUS:
        smooth = bool(is_smooth(f))
        for w, c in all_wall_curves(f):
            walls += 1
            if not c.is_relation(f):
                failures.append((f.name, w.rays, "relation"))
            if smooth and any(x.denominator != 1 for x in c.intersections):
                failures.append((f.name, w.rays, "non-integer"))
            rel = wall_relation(f, w)
            if rel is not None:
                bridged += 1
                if not relation_curve_class(f, rel).proportional_to(c):
                    failures.append((f.name, w.rays, "bridge"))
    report(8, "wall classes are relations, integral on smooth fans, match relation curves",
           failures, "%d walls, %d bridged" % (walls, bridged))


def test_criterion_09_sign_never_negative():
    fans = CORPUS + random_fans(60, seed=9)
    signs = Counter(tangent_seshadri_sign_at_identity(f) for f in fans)
    failures = [s for s in signs if s not in (SeshadriSign.POSITIVE, SeshadriSign.ZERO)]
    if set(SeshadriSign) != {SeshadriSign.POSITIVE, SeshadriSign.ZERO}:
        failures.append("sign type admits other values")
    report(9, "tangent Seshadri sign never negative", failures,
           "%d fans, %d positive" % (len(fans), signs[SeshadriSign.POSITIVE]))


def _scan_output():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["corpus", "--question4", "--budget", "1000", "--seed", "42"])
    return code, buf.getvalue()


def test_criterion_10_question4_scan():
    code1, out1 = _scan_output()
    code2, out2 = _scan_output()
    rep = json.loads(out1)
    failures = []
    if code1 != 0 or rep["findings"]:
        failures.append(("findings", rep["findings"]))
    if out1 != out2 or code1 != code2:
        failures.append("report not byte-reproducible")
    report(10, "question4 scan with budget 1000 and seed 42 has zero findings", failures,
           "%d distinct fans" % rep["mutation_search"]["distinct_fans"])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
