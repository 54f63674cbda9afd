import csv
import json
import subprocess
import sys

import pytest

from compactlines import cli
from compactlines.cli import COLUMNS, golden_names, run_command
from compactlines.suites import SUITES


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_verify_lemmas_small_campaign(tmp_path):
    out = tmp_path / "v.csv"
    assert run_command(["verify-lemmas", "--trials", "2", "--seed", "7", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert tuple(rows[0]) == COLUMNS
    suites = {r["suite"] for r in rows}
    assert suites == set(SUITES)
    for s in SUITES:
        assert {r["trial"] for r in rows if r["suite"] == s} == {"0", "1"}
    assert all(r["pass"] == "true" for r in rows)


def test_no_floats_unless_asked(tmp_path):
    out = tmp_path / "v.csv"
    run_command(["verify-lemmas", "--trials", "1", "--suite", "flower", "--out", str(out)])
    for r in read_csv(out):
        for key in ("lhs", "rhs"):
            assert r[key] == "" or "/" in r[key] or not r[key][0].isdigit()
    run_command(["verify-lemmas", "--trials", "1", "--suite", "flower", "--decimal", "--out", str(out)])
    assert "lhs_decimal_approx" in read_csv(out)[0]


def test_json_mirrors_csv(tmp_path):
    j, c = tmp_path / "v.json", tmp_path / "v.csv"
    args = ["verify-lemmas", "--trials", "1", "--suite", "tilde", "--suite", "skeleton"]
    run_command(args + ["--format", "json", "--out", str(j)])
    run_command(args + ["--out", str(c)])
    doc = json.loads(j.read_text())
    assert [{k: str(v).lower() if k in ("pass",) else str(v) for k, v in r.items()} for r in doc["rows"]] == read_csv(c)
    assert set(doc["instances"]) == {r["instance_digest"] for r in doc["rows"]}
    assert doc["summary"]["failed"] == 0


def test_failure_exit_code_and_replay_file(tmp_path, monkeypatch):
    def broken(rng, cfg):
        return {"x": rng.randint(0, 9)}, [("always_false", 1, 0, False)]

    monkeypatch.setitem(SUITES, "order", broken)
    out = tmp_path / "v.csv"
    assert run_command(["verify-lemmas", "--trials", "2", "--suite", "order", "--out", str(out)]) == 1
    fail = json.loads((tmp_path / "v.csv.failures.json").read_text())
    assert len(fail["failures"]) >= 1
    assert fail["failures"][0]["instance"] is not None


def test_exception_becomes_failed_row(tmp_path, monkeypatch):
    def crashes(rng, cfg):
        raise AssertionError("postcondition")

    monkeypatch.setitem(SUITES, "order", crashes)
    out = tmp_path / "v.csv"
    assert run_command(["verify-lemmas", "--trials", "1", "--suite", "order", "--out", str(out)]) == 1
    assert read_csv(out)[0]["check"] == "exception"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-lemmas", "--eps", "zero"],
        ["verify-lemmas", "--eps", "-1/2"],
        ["verify-lemmas", "--trials", "0"],
        ["verify-lemmas", "--suite", "nonsense"],
        ["decompose", "/nonexistent/instance.json"],
        ["frobnicate"],
    ],
)
def test_malformed_input_exit_two(argv, capsys):
    assert run_command(argv) == 2


def test_malformed_instance_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"operator": {"kind": "finitebasis", "line": {"kind": "finite", "size": 2}, "basis": []}}')
    assert run_command(["hierarchy", str(p)]) == 2
    p.write_text("[1, 2")
    assert run_command(["pipeline", str(p)]) == 2


def test_golden_files_are_bundled():
    assert {"pipeline_lexdouble.json", "decompose_finite.json", "hierarchy_omega.json"} <= set(golden_names())


def test_pipeline_prints_ratio(capsys):
    assert run_command(["pipeline", "--eps", "1/10"]) == 0
    out = capsys.readouterr().out
    assert "ratio=1/1 bound=81/10 holds=true" in out


def test_counterexample_prints_witness(capsys):
    assert run_command(["counterexample", "--depth", "4", "--horizon", "30", "--trials", "3"]) == 0
    out = capsys.readouterr().out
    assert "witness t=1/2 covering count=4" in out


def test_hierarchy_dump(tmp_path):
    out = tmp_path / "h.json"
    assert run_command(["hierarchy", "golden:hierarchy_omega.json", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["result"]["levels"] == [
        [[{"ordinal": [0, 0, 0]}, {"ordinal": [0, 1, 0]}]],
        [[{"ordinal": [0, 1, 0]}, {"ordinal": [0, 1, 0]}]],
        [],
    ]


def test_decompose_golden(tmp_path):
    out = tmp_path / "d.json"
    assert run_command(["decompose", "golden:decompose_finite.json", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["result"]["terms"]) == 20
    assert doc["summary"]["failed"] == 0


def test_stdout_artifact_has_no_wall_clock(capsys):
    run_command(["pipeline", "--format", "json", "--out", "-"])
    captured = capsys.readouterr()
    assert "wall-clock" not in captured.out and "wall-clock" in captured.err
    json.loads(captured.out)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "compactlines", "pipeline"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "ratio=" in res.stdout


def test_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    base = ["verify-lemmas", "--trials", "3", "--suite", "flower", "--suite", "tilde", "--format", "json"]
    run_command(base + ["--out", str(a)])
    run_command(base + ["--jobs", "2", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
