"""CLI surface: subcommands, exit codes, deterministic serialization."""

import json
import os

import pytest

from macdo.cli import main
from macdo.serialize import dumps, op_to_obj, poly_from_obj, poly_to_obj


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_poly_j_text(capsys):
    code, out, _ = run_cli(capsys, "poly", "J", "--lambda", "1", "--n", "2")
    assert code == 0
    assert out.strip() == "(-t + 1)*m[1]"


def test_poly_p_text(capsys):
    code, out, _ = run_cli(capsys, "poly", "P", "--lambda", "1,1", "--n", "2")
    assert code == 0
    assert out.strip() == "(1)*m[1,1]"


def test_poly_json_roundtrips(capsys):
    code, out, _ = run_cli(capsys, "poly", "J", "--lambda", "2", "--n", "2",
                           "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 2 and obj["lambda"] == "2" and obj["basis"] == "monomial"
    for key, pj in obj["coeffs"].items():
        back = poly_from_obj(pj)
        assert poly_to_obj(back) == pj
    assert dumps(obj) == out


def test_poly_bad_args(capsys):
    code, _, err = run_cli(capsys, "poly", "P", "--lambda", "1,1,1", "--n", "2")
    assert code == 2
    assert "error" in err


def test_poly_rejects_unsorted_partition(capsys):
    code, _, err = run_cli(capsys, "poly", "P", "--lambda", "1,2", "--n", "2")
    assert code == 2


def test_operator_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "operator", "--m", "0", "--n", "2")
    assert code == 0
    assert out.strip() == "T^[0, 0]: 1"
    code, out, _ = run_cli(capsys, "operator", "--m", "1", "--n", "2",
                           "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["m"] == 1 and obj["n"] == 2
    gammas = [tuple(c["gamma"]) for c in obj["coeffs"]]
    assert gammas == [(0, 0), (1, 0), (0, 1)]


def test_desk_scale_limits(capsys):
    code, _, err = run_cli(capsys, "operator", "--m", "5", "--n", "2")
    assert code == 2 and "unsafe-limits" in err


def test_identity_pass_and_fail_reports(capsys):
    code, out, _ = run_cli(capsys, "identity", "--name", "qbinom",
                           "--alpha", "2,1")
    assert code == 0
    rec = json.loads(out)
    assert rec["pass"] is True
    code, _, err = run_cli(capsys, "identity", "--name", "nope", "--alpha", "1")
    assert code == 2
    code, _, err = run_cli(capsys, "identity", "--name", "chu", "--alpha", "1,1")
    assert code == 2  # missing --k


def test_identity_keyid(capsys):
    code, out, _ = run_cli(capsys, "identity", "--name", "keyid",
                           "--m", "1", "--n", "1")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_suite_reports_and_exit(capsys):
    code, out, err = run_cli(capsys, "verify", "--suite", "qbinom",
                             "--max-weight", "2", "--n", "2")
    assert code == 0
    lines = [json.loads(ln) for ln in out.splitlines()]
    assert lines and all(r["pass"] for r in lines)
    assert all(r["suite"] == "qbinom" for r in lines)
    assert "cases passed" in err


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "bogus")
    assert code == 2


def test_verify_exit_one_when_a_case_fails(monkeypatch, capsys):
    from macdo import cli as cli_mod
    from macdo.suites import _bool_case
    monkeypatch.setattr(
        cli_mod, "build_suite",
        lambda *a, **k: [_bool_case("demo", "forced", {}, lambda: False)])
    code, out, err = run_cli(capsys, "verify", "--suite", "all")
    assert code == 1
    assert json.loads(out.splitlines()[0])["pass"] is False


def test_verify_seed_only_shuffles_execution(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--suite", "chu",
                             "--max-weight", "2", "--n", "2")
    code2, out2, _ = run_cli(capsys, "verify", "--suite", "chu",
                             "--max-weight", "2", "--n", "2", "--seed", "99")
    assert code1 == code2 == 0
    assert out1 == out2  # report order is independent of execution order


def test_verify_out_file(tmp_path, capsys):
    out_path = tmp_path / "report.jsonl"
    code, out, err = run_cli(capsys, "verify", "--suite", "keyid",
                             "--out", str(out_path))
    assert code == 0
    assert out == ""
    lines = out_path.read_text().splitlines()
    assert lines and all(json.loads(ln)["pass"] for ln in lines)


def test_golden_roundtrip_tamper_and_missing(tmp_path, capsys):
    target = tmp_path / "golden"
    code, _, _ = run_cli(capsys, "golden", "write", str(target))
    assert code == 0
    code, _, _ = run_cli(capsys, "golden", "check", str(target))
    assert code == 0
    # tamper: flip one byte
    victim = sorted(target.iterdir())[0]
    text = victim.read_text()
    victim.write_text(text.replace('"c": "1"', '"c": "2"', 1))
    code, _, err = run_cli(capsys, "golden", "check", str(target))
    assert code == 1
    # missing file
    victim.unlink()
    code, _, err = run_cli(capsys, "golden", "check", str(target))
    assert code == 2


def test_operator_json_matches_library(capsys):
    from macdo.raising import row_raising_op
    code, out, _ = run_cli(capsys, "operator", "--m", "2", "--n", "2",
                           "--format", "json")
    assert code == 0
    assert out == dumps(op_to_obj(row_raising_op(2, 2), 2))
