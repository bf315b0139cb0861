import json

import pytest

from parabolic import cli
from parabolic.cli import OUTPUT_DIR_ENV, CheckResult, VerificationReport, main, run_verification
from parabolic.schreier import build_mod_q, graph_from_json

_FAST = ["--n-max", "5", "--q-max", "5", "--depth", "4", "--sweep-len", "3"]

_CHECK_IDS = [
    "freeness-sweep",
    "orbit-witnesses",
    "line-loops",
    "core-growth",
    "core-line-points",
    "abelianization",
    "stabilizer-index",
    "rank-bound",
    "schreier-generators",
    "membership-oracle",
]


# ---------------------------------------------------------------- verify


def test_run_verification_all_pass():
    report = run_verification(5, 5, 4, 3)
    assert report.all_passed
    assert [c.id for c in report.checks] == _CHECK_IDS
    assert report.summary() == {"total": 10, "passed": 10, "failed": 0}


def test_run_verification_is_deterministic():
    a = run_verification(5, 5, 4, 3).to_json()
    b = run_verification(5, 5, 4, 3).to_json()
    assert a == b


def test_run_verification_parameter_guards():
    for bad in (
        dict(n_max=0),
        dict(q_max=1),
        dict(depth=3),
        dict(depth=17),
        dict(sweep_len=0),
    ):
        with pytest.raises(ValueError):
            run_verification(**{**dict(n_max=2, q_max=2, depth=4, sweep_len=1), **bad})


def test_report_json_shape():
    report = run_verification(2, 3, 4, 2)
    obj = json.loads(report.to_json())
    assert obj["schema_version"] == 1
    assert obj["parameters"] == {"n_max": 2, "q_max": 3, "depth": 4, "sweep_len": 2}
    assert len(obj["checks"]) == 10
    for rec in obj["checks"]:
        assert set(rec) == {"id", "claim", "anchor", "status", "details"}
        assert rec["status"] == "pass"
    assert obj["summary"]["failed"] == 0


def test_verify_command_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", *_FAST, "--out", str(out), "--format", "json"])
    assert code == 0
    stdout = capsys.readouterr().out
    assert out.read_text(encoding="utf-8") == stdout
    assert json.loads(stdout)["summary"]["passed"] == 10


def test_verify_command_text_format(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", *_FAST, "--out", str(out)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "10/10 checks passed" in stdout
    assert f"report written to {out}" in stdout
    for check_id in _CHECK_IDS:
        assert f"PASS {check_id}:" in stdout


def test_verify_command_honours_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert main(["verify", *_FAST]) == 0
    capsys.readouterr()
    written = tmp_path / "verification.json"
    assert written.exists()
    assert json.loads(written.read_text(encoding="utf-8"))["summary"]["failed"] == 0


def test_verify_command_exit_one_on_failure(tmp_path, monkeypatch, capsys):
    failing = VerificationReport(
        parameters={},
        checks=[CheckResult("stub", "claim", "anchor", "fail", "synthetic")],
    )
    monkeypatch.setattr(cli, "run_verification", lambda *a: failing)
    code = main(["verify", "--out", str(tmp_path / "r.json")])
    assert code == 1
    assert "FAIL stub" in capsys.readouterr().out


def test_verify_command_rejects_bad_depth(tmp_path, capsys):
    code = main(["verify", "--depth", "17", "--out", str(tmp_path / "r.json")])
    assert code == 2
    assert capsys.readouterr().err.startswith("error:")


# ---------------------------------------------------------------- one-shot commands


def test_orbit_command_text(capsys):
    assert main(["orbit", "--n", "-1"]) == 0
    out = capsys.readouterr().out
    assert "word = v" in out
    assert "endpoint = (-1, 2)" in out


def test_orbit_command_json(capsys):
    assert main(["orbit", "--n", "3", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj == {"n": 3, "word": "uuuuv", "length": 5, "endpoint": [3, -2], "verified": True}


def test_rank_command(capsys):
    assert main(["rank", "--q", "7"]) == 0
    out = capsys.readouterr().out
    assert "index = 49" in out and "rank = 50" in out and "rank >= 8" in out
    assert main(["rank", "--q", "7", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj == {"q": 7, "index": 49, "rank": 50, "guaranteed_minimum": 8}


def test_abelianization_command(capsys):
    assert main(["abelianization", "--q", "5", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj == {"q": 5, "free_rank": 2, "torsion": [2, 2], "min_generators": 4}
    assert main(["abelianization", "--q", "5"]) == 0
    assert "Z^2 x Z/2 x Z/2" in capsys.readouterr().out


def test_member_command(capsys):
    assert main(["member", "--word", "uVuV", "--q", "4"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["member", "--word", "uVuV"]) == 0
    assert capsys.readouterr().out.strip() == "false"
    assert main(["member", "--word", "U^-1 V U^-1 V", "--q", "2", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj == {"word": "uVuV", "modulus": 2, "member": True}


def test_snf_command(capsys):
    assert main(["snf", "--matrix", "0 2 0 0; 0 0 2 0"]) == 0
    assert capsys.readouterr().out.strip() == "2 2"
    assert main(["snf", "--matrix", "0, 0; 0, 0"]) == 0
    assert capsys.readouterr().out.strip() == "(none)"
    assert main(["snf", "--matrix", "4 0; 0 6", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"invariant_factors": [2, 12]}


def test_core_command(capsys):
    assert main(["core", "--q", "2", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["kind"] == "exact" and obj["count"] == 4 and obj["witness"] is None
    assert main(["core", "--depth", "7", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["kind"] == "certified-lower-bound"
    assert obj["count"] == 6 and obj["witness"] == "uVuV"
    assert [0, 1] in obj["vertices"]


def test_core_command_text(capsys):
    assert main(["core", "--depth", "5"]) == 0
    out = capsys.readouterr().out
    assert "count = 4" in out and "(0, 1)" in out


def test_graph_command_json_round_trip(capsys):
    assert main(["graph", "--q", "3", "--format", "json"]) == 0
    g = graph_from_json(capsys.readouterr().out)
    assert g == build_mod_q(3)


def test_graph_command_dot(capsys):
    assert main(["graph", "--depth", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph orbital {")
    assert out.count("style=dashed") == 4


def test_graph_command_out_file(tmp_path, capsys):
    target = tmp_path / "g.dot"
    assert main(["graph", "--q", "2", "--out", str(target)]) == 0
    assert "4 vertices written" in capsys.readouterr().out
    assert target.read_text(encoding="utf-8").startswith("digraph orbital {")


# ---------------------------------------------------------------- failure paths


def test_graph_command_needs_exactly_one_region(capsys):
    assert main(["graph", "--q", "2", "--depth", "3"]) == 2
    assert capsys.readouterr().err.startswith("error:")
    assert main(["graph"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_member_command_rejects_bad_word(capsys):
    assert main(["member", "--word", "UX"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_core_command_rejects_bad_witness(capsys):
    assert main(["core", "--depth", "4", "--witness", "W"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_rank_command_rejects_bad_q(capsys):
    assert main(["rank", "--q", "1"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_snf_command_rejects_ragged_matrix(capsys):
    assert main(["snf", "--matrix", "1 2; 3"]) == 2
    assert capsys.readouterr().err.startswith("error:")
