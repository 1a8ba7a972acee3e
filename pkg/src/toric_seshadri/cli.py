"""Command-line interface.

Reports go to stdout as compact JSON with exact rationals as strings;
diagnostics go to stderr.  Exit codes: 0 ok, 1 domain failure, 2 I/O or
parse error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus as corpus_mod
from .fan import (
    ConeOverlap,
    Fan,
    FanError,
    FanFormatError,
    class_group,
    dump_fan,
    gen_hirzebruch,
    gen_projective_space,
    gen_weighted_projective,
    is_complete,
    is_projective,
    is_smooth,
    load_fan,
    star_subdivision,
    validate_fan,
)
from .intersection import (
    all_wall_curves,
    divisor_seshadri_sign_at_identity,
    format_rational,
    is_nef,
    parse_rational,
)
from .positivity import (
    check_dagger,
    find_zero_sum_primitive_collection,
    primitive_collections,
    question4_scan,
    verify_theorem1,
)

log = logging.getLogger("toric_seshadri")

OK, DOMAIN, IO, INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    """I/O or parse failure (exit 2)."""


class DomainError(Exception):
    """Failed precondition on valid input (exit 1)."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("error", ""))
        self.payload = payload


class InternalError(Exception):
    """A witness or certificate failed re-verification (exit 3)."""


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _error_payload(exc: FanError) -> dict:
    out = {"error": exc.kind, "detail": str(exc)}
    if isinstance(exc, ConeOverlap):
        out["cones"] = [list(c) for c in exc.cones]
    return out


def read_fan(path) -> Fan:
    try:
        return load_fan(path)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("%s: malformed JSON at line %d column %d (char %d): %s"
                         % (path, exc.lineno, exc.colno, exc.pos, exc.msg)) from None
    except FanFormatError as exc:
        raise InputError("%s: %s" % (path, exc)) from None


def load_valid(path) -> Fan:
    f = read_fan(path)
    try:
        validate_fan(f)
    except FanError as exc:
        raise DomainError(_error_payload(exc)) from None
    return f


def relation_json(f: Fan, rel) -> dict:
    if not rel.verify(f) or len(rel.indices) > f.dim:
        raise InternalError("witness %r failed re-verification" % (rel,))
    return {"indices": list(rel.indices), "coeffs": [format_rational(a) for a in rel.coefficients]}


def dagger_json(f: Fan) -> dict:
    rep = check_dagger(f)
    out = {"holds": rep.holds}
    if rep.witness is not None:
        out["witness"] = relation_json(f, rep.witness)
    return out


def _require_complete(f: Fan):
    c = is_complete(f)
    if not c:
        raise DomainError({"error": "IncompleteFan", "detail": c.reason,
                           "witness": list(c.witness) if c.witness is not None else None})


def wall_table(f: Fan) -> list:
    rows = []
    for w, c in all_wall_curves(f):
        if not c.is_relation(f):
            raise InternalError("wall class at %r is not a relation" % (w.rays,))
        rows.append({"wall": list(w.rays), "cones": [list(x) for x in w.cones],
                     "class": [format_rational(x) for x in c.intersections]})
    return rows


def analysis_report(f: Fan, walls: bool = False, timings: bool = False) -> dict:
    clock = {}

    def timed(key, fn):
        t0 = time.perf_counter()
        out = fn()
        clock[key] = round(time.perf_counter() - t0, 6)
        return out

    timed("validate", lambda: validate_fan(f))
    complete = timed("complete", lambda: is_complete(f))
    smooth = timed("smooth", lambda: is_smooth(f))
    report = {"fan": f.name, "valid": True}
    flags = {"simplicial": True, "smooth": smooth.smooth, "complete": complete.complete}
    flags["projective"] = (timed("projective", lambda: is_projective(f).projective)
                           if complete else None)
    report["flags"] = flags
    report["multiplicities"] = [[list(c), m] for c, m in smooth.multiplicities.items()]
    cg = class_group(f)
    report["class_group"] = {"rank": cg.rank, "torsion": list(cg.torsion)}
    if complete:
        dag = timed("dagger", lambda: dagger_json(f))
        report["dagger"] = dag
        report["seshadri_sign"] = "positive" if dag["holds"] else "zero"
        if walls:
            report["walls"] = timed("walls", lambda: wall_table(f))
    if timings:
        report["timings"] = clock
    return report


def parse_divisor(text: str, nrays: int) -> list:
    text = text.strip()
    try:
        if text.startswith("{"):
            entries = json.loads(text)["divisor"]
            if not all(isinstance(e, (str, int)) and not isinstance(e, bool) for e in entries):
                raise ValueError("divisor entries must be rational strings")
            values = [parse_rational(str(e)) for e in entries]
        else:
            values = [parse_rational(e) for e in text.split(",")]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError("bad divisor %r: %s" % (text, exc)) from None
    if len(values) != nrays:
        raise DomainError({"error": "DivisorLength",
                           "detail": "expected %d coefficients, got %d" % (nrays, len(values))})
    return values


# -- commands -----------------------------------------------------------


def cmd_validate(args) -> int:
    f = read_fan(args.path)
    try:
        rep = validate_fan(f)
    except FanError as exc:
        emit({"valid": False, **_error_payload(exc)})
        return DOMAIN
    emit({"fan": f.name, "valid": rep.ok, "rays": f.nrays, "max_cones": len(f.max_cones)})
    return OK


def cmd_classify(args) -> int:
    f = load_valid(args.path)
    emit(analysis_report(f, walls=args.walls, timings=args.timings))
    return OK


def cmd_dagger(args) -> int:
    f = load_valid(args.path)
    _require_complete(f)
    emit(dagger_json(f))
    return OK


def cmd_seshadri(args) -> int:
    f = load_valid(args.path)
    _require_complete(f)
    dag = dagger_json(f)
    out = {"sign": "positive" if dag["holds"] else "zero"}
    if "witness" in dag:
        out["witness"] = dag["witness"]
    emit(out)
    return OK


def cmd_pcols(args) -> int:
    f = load_valid(args.path)
    cols = primitive_collections(f)
    zero = find_zero_sum_primitive_collection(f)
    if zero is not None and any(sum(f.rays[i][k] for i in zero) for k in range(f.dim)):
        raise InternalError("zero-sum primitive collection does not sum to zero")
    emit({"primitive_collections": [list(b) for b in cols],
          "zero_sum": None if zero is None else list(zero)})
    return OK


def cmd_nef(args) -> int:
    f = load_valid(args.path)
    _require_complete(f)
    if args.divisor_file:
        try:
            text = Path(args.divisor_file).read_text()
        except OSError as exc:
            raise InputError(str(exc)) from None
    elif args.divisor:
        text = args.divisor
    else:
        raise InputError("one of --divisor or --divisor-file is required")
    d = parse_divisor(text, f.nrays)
    rep = is_nef(f, d)
    out = {"nef": rep.nef}
    if not rep.nef:
        out["witness_wall"] = list(rep.wall.rays)
        out["value"] = format_rational(rep.value)
    if args.sign:
        if f.dim < 2:
            raise DomainError({"error": "DimensionTooSmall", "detail": "needs dimension >= 2"})
        out["seshadri_sign"] = divisor_seshadri_sign_at_identity(f, d).value
    emit(out)
    return OK


def cmd_walls(args) -> int:
    f = load_valid(args.path)
    _require_complete(f)
    emit({"walls": wall_table(f)})
    return OK


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError({"error": "BadParameters", "detail": "expected integers: %r" % text})


def cmd_gen(args) -> int:
    family = args.family
    try:
        if family == "corpus":
            if not args.params:
                raise DomainError({"error": "BadParameters", "detail": "corpus needs a directory"})
            paths = corpus_mod.write_corpus(args.params)
            emit({"written": sorted(p.name for p in paths)})
            return OK
        if family == "pn":
            (n,) = _ints(args.params)
            f = gen_projective_space(n)
        elif family == "wps":
            f = gen_weighted_projective(*_ints(args.params))
        elif family == "hirzebruch":
            (r,) = _ints(args.params)
            f = gen_hirzebruch(r)
        elif family == "star":
            if not args.fan:
                raise DomainError({"error": "BadParameters", "detail": "star needs --fan"})
            f = star_subdivision(load_valid(args.fan), _ints(args.params))
        else:
            raise DomainError({"error": "BadParameters", "detail": "unknown family %r" % family})
        validate_fan(f)
    except FanError as exc:
        raise DomainError(_error_payload(exc)) from None
    except ValueError as exc:
        raise DomainError({"error": "BadParameters", "detail": str(exc)}) from None
    if args.out:
        dump_fan(f, args.out)
        emit({"written": str(args.out)})
    else:
        sys.stdout.write(f.to_json() + "\n")
    return OK


def _theorem1_one(path: str) -> dict:
    try:
        f = load_valid(path)
    except (InputError, DomainError) as exc:
        return {"fan": Path(path).stem, "status": "error", "reason": str(exc)}
    return verify_theorem1(f).to_dict()


def cmd_corpus(args) -> int:
    directory = Path(args.dir) if args.dir else corpus_mod.BUNDLED_DIR
    files = sorted(directory.glob("*.json")) if directory.is_dir() else []
    if not files:
        emit({"error": "no fans found", "dir": str(directory)})
        return DOMAIN
    if args.theorem1:
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_theorem1_one, map(str, files)))
        else:
            results = [_theorem1_one(str(p)) for p in files]
        summary = {s: sum(1 for r in results if r["status"] == s)
                   for s in ("passed", "failed", "not_applicable", "error")}
        emit({"mode": "theorem1", "results": results, "summary": summary})
        return OK if summary["failed"] == 0 and summary["error"] == 0 else DOMAIN
    fans, errors = [], []
    for p in files:
        try:
            fans.append(load_valid(p))
        except (InputError, DomainError) as exc:
            errors.append({"fan": p.stem, "error": str(exc)})
    rep = question4_scan(fans, budget=args.budget, seed=args.seed)
    out = {"mode": "question4", **rep.to_dict(), "errors": errors}
    emit(out)
    for finding in rep.findings:
        print("FINDING: smooth complete non-projective-space fan with the positive-relation "
              "property: %s" % dumps(finding["fan"]), file=sys.stderr)
    return DOMAIN if errors else OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-seshadri",
        description="Exact combinatorics of complete simplicial toric fans.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
            ("validate", cmd_validate, "check every fan invariant"),
            ("dagger", cmd_dagger, "positive relations supported on at most dim rays"),
            ("seshadri", cmd_seshadri, "sign of the tangent Seshadri constant at 1"),
            ("pcols", cmd_pcols, "primitive collections"),
            ("walls", cmd_walls, "wall curve intersection table")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("path")
        p.set_defaults(func=fn)

    p = sub.add_parser("classify", help="full analysis report")
    p.add_argument("path")
    p.add_argument("--walls", action="store_true", help="include the wall intersection table")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("nef", help="nef test for an invariant divisor")
    p.add_argument("path")
    p.add_argument("--divisor", help='comma list "0,1,-1/2,..." or {"divisor": [...]}')
    p.add_argument("--divisor-file")
    p.add_argument("--sign", action="store_true",
                   help="also report the divisor's Seshadri sign at 1")
    p.set_defaults(func=cmd_nef)

    p = sub.add_parser("gen", help="generate a fan file")
    p.add_argument("family", choices=["pn", "wps", "hirzebruch", "star", "corpus"])
    p.add_argument("params", nargs="?", default="",
                   help="n | q0,..,qn | r | ray for star | directory for corpus")
    p.add_argument("--fan", help="input fan for star")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("corpus", help="run a harness over a directory of fans")
    p.add_argument("dir", nargs="?", help="defaults to the bundled corpus")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--theorem1", action="store_true")
    mode.add_argument("--question4", action="store_true")
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return IO
    except DomainError as exc:
        emit(exc.payload)
        return DOMAIN
    except FanError as exc:
        emit(_error_payload(exc))
        return DOMAIN
    except (InternalError, ArithmeticError, AssertionError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return INTERNAL
    except Exception:
        log.exception("unexpected failure")
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
