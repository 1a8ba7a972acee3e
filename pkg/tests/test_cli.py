import json
import subprocess
import sys

import pytest

from toric_seshadri.cli import dumps, main
from toric_seshadri.corpus import BUNDLED_DIR


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def fixture(name):
    return BUNDLED_DIR / (name + ".json")


@pytest.fixture
def overlap(tmp_path):
    path = tmp_path / "overlap.json"
    path.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1], [1, 1]],
                                "max_cones": [[0, 1], [0, 2]]}))
    return path


def test_validate(capsys, overlap, tmp_path):
    code, out, _ = run(capsys, "validate", fixture("p2"))
    assert code == 0 and json.loads(out)["valid"] is True
    code, out, _ = run(capsys, "validate", overlap)
    rep = json.loads(out)
    assert code == 1 and rep["error"] == "ConeOverlap" and rep["cones"] == [[0, 1], [0, 2]]
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "rays": [[1')
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "line 1 column" in err
    code, _, _ = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 2


def test_seshadri(capsys):
    code, out, _ = run(capsys, "seshadri", fixture("p1123"))
    assert code == 0 and out == '{"sign":"positive"}\n'
    code, out, _ = run(capsys, "seshadri", fixture("hirzebruch_2"))
    assert out == '{"sign":"zero","witness":{"indices":[1,2],"coeffs":["1","1"]}}\n'


def test_seshadri_on_incomplete_fan(capsys, tmp_path):
    path = tmp_path / "quadrant.json"
    path.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 1]]}))
    code, out, _ = run(capsys, "seshadri", path)
    assert code == 1 and json.loads(out)["error"] == "IncompleteFan"


def test_nef(capsys, tmp_path):
    code, out, _ = run(capsys, "nef", fixture("hirzebruch_2"), "--divisor", "0,1,0,0")
    assert code == 0 and out == '{"nef":false,"witness_wall":[1],"value":"-2"}\n'
    code, out, _ = run(capsys, "nef", fixture("hirzebruch_2"), "--divisor",
                       '{"divisor": ["1/2", "0", "0", "0"]}', "--sign")
    assert json.loads(out) == {"nef": True, "seshadri_sign": "nonnegative"}
    div = tmp_path / "d.json"
    div.write_text(json.dumps({"divisor": ["0", "1", "0", "0"]}))
    code, out, _ = run(capsys, "nef", fixture("hirzebruch_3"), "--divisor-file", div, "--sign")
    assert json.loads(out)["seshadri_sign"] == "-infinity"
    code, _, _ = run(capsys, "nef", fixture("hirzebruch_2"), "--divisor", "0,1.5,0,0")
    assert code == 2
    code, out, _ = run(capsys, "nef", fixture("hirzebruch_2"), "--divisor", "0,1")
    assert code == 1 and json.loads(out)["error"] == "DivisorLength"


def test_dagger_pcols_walls(capsys):
    code, out, _ = run(capsys, "dagger", fixture("p3"))
    assert out == '{"holds":true}\n'
    code, out, _ = run(capsys, "pcols", fixture("bl1_p2"))
    assert json.loads(out) == {"primitive_collections": [[0, 1], [2, 3]], "zero_sum": [2, 3]}
    code, out, _ = run(capsys, "walls", fixture("hirzebruch_2"))
    walls = json.loads(out)["walls"]
    assert walls[1] == {"wall": [1], "cones": [[0, 1], [1, 3]], "class": ["1", "-2", "0", "1"]}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", fixture("p1123"), "--walls")
    rep = json.loads(out)
    assert code == 0
    assert rep["flags"] == {"simplicial": True, "smooth": False, "complete": True,
                            "projective": True}
    assert sorted(m for _, m in rep["multiplicities"]) == [1, 1, 2, 3]
    assert rep["class_group"] == {"rank": 1, "torsion": []}
    assert rep["seshadri_sign"] == "positive" and len(rep["walls"]) == 6
    assert "timings" not in rep
    code, out, _ = run(capsys, "classify", fixture("p2"), "--timings")
    assert "timings" in json.loads(out)


def test_report_roundtrip_and_determinism(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "classify", fixture("bl2_p2"), "--walls")
        outs.append(out)
    assert outs[0] == outs[1]
    assert dumps(json.loads(outs[0])) + "\n" == outs[0]


@pytest.mark.parametrize("argv, check", [
    (["pn", "3"], lambda d: len(d["rays"]) == 4 and d["dim"] == 3),
    (["wps", "1,1,2,3"], lambda d: len(d["max_cones"]) == 4),
    (["hirzebruch", "5"], lambda d: d["rays"][3] == [-1, 5]),
])
def test_gen(capsys, tmp_path, argv, check):
    out_path = tmp_path / "f.json"
    code, _, _ = run(capsys, "gen", *argv, "-o", out_path)
    assert code == 0 and check(json.loads(out_path.read_text()))
    code, _, _ = run(capsys, "validate", out_path)
    assert code == 0


def test_gen_errors(capsys):
    code, out, _ = run(capsys, "gen", "wps", "2,2,1")
    assert code == 1 and json.loads(out)["error"] == "IllFormedWeights"
    code, out, _ = run(capsys, "gen", "pn", "x")
    assert code == 1


def test_gen_star(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "star", "1,1", "--fan", fixture("p2"))
    assert code == 0
    assert json.loads(out)["rays"] == [[1, 0], [0, 1], [-1, -1], [1, 1]]


def test_corpus_theorem1(capsys):
    code, out, _ = run(capsys, "corpus", BUNDLED_DIR, "--theorem1")
    rep = json.loads(out)
    assert code == 0 and rep["summary"]["failed"] == 0
    assert [r["fan"] for r in rep["results"]] == sorted(p.stem for p in BUNDLED_DIR.glob("*.json"))


def test_corpus_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "corpus", BUNDLED_DIR, "--theorem1")
    _, parallel, _ = run(capsys, "corpus", BUNDLED_DIR, "--theorem1", "--jobs", "2")
    assert serial == parallel


def test_corpus_empty_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", tmp_path, "--theorem1")
    assert code == 1 and json.loads(out)["error"] == "no fans found"


def test_corpus_collects_bad_files(capsys, tmp_path, overlap):
    (tmp_path / "p2.json").write_text(fixture("p2").read_text())
    (tmp_path / "overlap.json").write_text(overlap.read_text())
    code, out, _ = run(capsys, "corpus", tmp_path, "--theorem1")
    rep = json.loads(out)
    assert code == 1 and rep["summary"] == {"passed": 1, "failed": 0, "not_applicable": 0,
                                            "error": 1}


def test_question4_small_budget(capsys):
    code, out, _ = run(capsys, "corpus", "--question4", "--budget", "50", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and rep["findings"] == []


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "toric_seshadri", "seshadri",
                          str(fixture("p1123"))], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == '{"sign":"positive"}\n'
