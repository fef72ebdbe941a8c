import csv
import io
import json

import pytest

from dcs.cli import run


def run_json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_jack_e2(capsys):
    code, obj = run_json(capsys, ["jack", "--lambda", "1,1"])
    assert code == 0
    coeffs = {tuple(c["mu"]): (c["num"], c["den"]) for c in obj["coeffs"]}
    assert coeffs == {(1, 1): (["1/2"], ["1/1"]), (2,): (["-1/2"], ["1/1"])}


def test_superjack_at_coupling(capsys):
    code, obj = run_json(capsys, ["superjack", "--lambda", "2", "--N", "1", "--M", "1", "--g", "2"])
    assert code == 0 and obj["N"] == 1 and obj["M"] == 1


def test_zero_state_example(capsys):
    code, obj = run_json(capsys, ["orthogonalize", "--N", "2", "--M", "0", "--Q", "0",
                                  "--n", "1,2", "--rs", "2,1"])
    assert code == 0
    assert obj["zero_state"] is True
    assert {tuple(u["m"]): u["coeff"] for u in obj["u"]} == {(1, 2): "1/1", (2, 1): "1/1", (3, 0): "1/1"}


def test_bijection_both_directions(capsys):
    _, a = run_json(capsys, ["bijection", "--lambda", "3,2,2,1", "--N", "1", "--M", "2"])
    assert a["n"] == [3, 3, 2]
    _, b = run_json(capsys, ["bijection", "--n", "3,3,2", "--N", "1", "--M", "2"])
    assert b["lambda"] == [3, 2, 2, 1]
    assert run(["bijection", "--N", "1", "--M", "2"]) == 2


def test_eta_output(capsys):
    code, obj = run_json(capsys, ["eta", "--N", "1", "--M", "0", "--Q", "0", "--n", "2", "--rs", "2,1"])
    assert code == 0 and obj["final_charge"] == 2
    assert {tuple(t["lambda"]) for t in obj["state"]["terms"]} == {(2,), (1, 1)}


def test_character_csv_free_fermions(capsys):
    assert run(["character", "--rs", "1,1", "--order", "24"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 24 * 2 + 1
    assert all(r["equal"] == "true" for r in rows)
    assert list(rows[0]) == ["unit_exponent", "lhs_coeff", "rhs_coeff", "equal"]


def test_character_mismatch_is_a_finding(capsys):
    assert run(["character", "--rs", "2,1", "--order", "2"]) == 1


def test_audit_exit_codes(capsys):
    assert run(["audit-sector", "--rs", "1,1", "--Q", "0", "--d", "3"]) == 0
    assert run(["audit-sector", "--rs", "2,1", "--Q", "0", "--d", "4"]) == 1


@pytest.mark.parametrize("argv", [["nope"], ["jack"], ["jack", "--lambda", "a"], ["verify"],
                                  ["superjack", "--lambda", "3,3", "--N", "1", "--M", "1"],
                                  ["eta", "--rs", "0,1", "--N", "0", "--M", "0", "--Q", "0", "--n", ""]])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_verify_single_criterion_writes_output(tmp_path, capsys):
    out = tmp_path / "c6.json"
    assert run(["verify", "--criterion", "6", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["ok"] is True
    assert "criterion 6: PASS" in capsys.readouterr().err


def test_verify_is_deterministic_under_seed(capsys):
    run(["verify", "--criterion", "9", "--seed", "4"])
    first = capsys.readouterr().out
    run(["verify", "--criterion", "9", "--seed", "4"])
    assert capsys.readouterr().out == first


def test_threads_from_environment(monkeypatch):
    from dcs.criteria import resolve_threads
    monkeypatch.setenv("DCS_THREADS", "3")
    assert resolve_threads(None) == 3
    assert resolve_threads(2) == 2
