import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ap3lab.cli import main

SUBCOMMANDS = ["count", "find-ap", "r3", "r3-table", "fekete", "discrepancy", "construct",
               "largeness", "audit-lemma3", "audit-chain", "abel-check"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_help_lists_every_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in SUBCOMMANDS:
        assert name in out


def test_construct_paper_set(capsys):
    code, out, _ = run(capsys, "construct", "paper-s:2")
    assert code == 0 and out == "1 10 11 100 101 102\n"


def test_count_from_file_json(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("1\n2\n3\n", encoding="utf-8")
    code, out, _ = run(capsys, "count", f"file:{f}", "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert (res["a_total"], res["trivial"], res["nontrivial_unordered"]) == (5, 3, 1)


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "json", "count", "family:full_interval:4")
    assert code == 0 and json.loads(out)["result"]["a_total"] == 8


def test_r3(capsys):
    code, out, _ = run(capsys, "r3", "20", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["size"] == 9 and res["optimal"] and len(res["witness"]) == 9
    assert Fraction(res["density"]) == Fraction(9, 20)


def test_r3_budget_exhausted(capsys):
    code, out, err = run(capsys, "r3", "24", "--budget-nodes", "3", "--format", "json")
    assert code == 2
    assert json.loads(out)["result"]["optimal"] is False
    assert "budget" in err


def test_r3_table_csv(capsys):
    code, out, _ = run(capsys, "r3-table", "8", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("n,size,density,optimal,witness")
    assert lines[-1].startswith("8,4,1/2,True,")


def test_fekete(capsys):
    code, out, _ = run(capsys, "fekete", "20", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["violations"] == [] and res["c_upper"] == "8/19"


def test_fekete_refuses_non_optimal(capsys):
    code, out, _ = run(capsys, "fekete", "24", "--budget-nodes", "2")
    assert code == 2 and "refused" in out


def test_discrepancy(capsys):
    code, out, _ = run(capsys, "discrepancy", "family:full_interval:50", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["sup_abs"] == 0.0 and res["grid_size"] == 201


def test_discrepancy_grid_flag(capsys):
    code, out, _ = run(capsys, "discrepancy", "family:evens:4", "--density", "1/2", "--grid", "8",
                       "--format", "json")
    assert json.loads(out)["result"]["sup_abs"] >= 2 - 1e-12


def test_find_ap(capsys):
    code, out, _ = run(capsys, "find-ap", "paper-s:4", "-k", "5")
    assert code == 0 and out == "10000 10001 10002 10003 10004\n"
    code, out, _ = run(capsys, "find-ap", "digits3:100")
    assert out == "none\n"


def test_largeness_json_round_trip(capsys):
    code, out, _ = run(capsys, "largeness", "family:primes:100", "100", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["abel_residual"] == "0/1"
    last = doc["result"]["rows"][-1]
    assert Fraction(last["reciprocal_exact"]) == sum(
        Fraction(1, p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                                 67, 71, 73, 79, 83, 89, 97))
    assert float(Fraction(last["reciprocal_exact"])) == last["reciprocal_sum"]


def test_audit_lemma3_schema(capsys):
    code, out, _ = run(capsys, "audit-lemma3", "extremal:12", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"audit", "params", "rows"}
    assert doc["audit"] == "lemma3-residual"
    assert all(r["a_total"] == r["size"] for r in doc["rows"])


def test_audit_lemma3_family_csv(capsys):
    code, out, _ = run(capsys, "audit-lemma3", "family:full_interval:100", "--ns", "10,11,100",
                       "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[3].split(",")[:5] == ["100", "100", "1/1", "5000", "0/1"]


def test_audit_lemma2(capsys):
    code, out, _ = run(capsys, "audit-lemma2", "extremal:10", "--format", "json")
    assert code == 0 and json.loads(out)["audit"] == "lemma2-discrepancy"


def test_audit_chain(capsys):
    code, out, _ = run(capsys, "audit-chain", "20", "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[4]["highlighted"] is True and rows[19]["highlighted"] is False
    assert Fraction(rows[4]["lemma1_term"]) == Fraction(4, 25)


def test_abel_check(capsys):
    code, out, _ = run(capsys, "abel-check", "family:squares:5000", "5000", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["residual"] == "0/1"


def test_random_family_requires_seed(capsys):
    code, _, err = run(capsys, "count", "family:random_density:100:p=0.5")
    assert code == 1 and "seed" in err
    code, _, _ = run(capsys, "count", "family:random_density:100:p=0.5", "--seed", "3")
    assert code == 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
    code, _, _ = run(capsys, "count", "family:fibonacci:10")
    assert code == 1


def test_invalid_input_data(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1\n0\n", encoding="utf-8")
    assert run(capsys, "count", f"file:{f}")[0] == 3
    f.write_text("1\nabc\n", encoding="utf-8")
    code, _, err = run(capsys, "count", f"file:{f}")
    assert code == 3 and "line 2" in err
    assert run(capsys, "count", f"file:{tmp_path / 'missing.txt'}")[0] == 3
    assert run(capsys, "discrepancy", "family:evens:10", "--n", "5")[0] == 3


def test_log_env_var_does_not_change_output(monkeypatch, capsys):
    a = run(capsys, "r3-table", "10", "--format", "json")[1]
    monkeypatch.setenv("AP3LAB_LOG", "DEBUG")
    b = run(capsys, "r3-table", "10", "--format", "json")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ap3lab.cli", "construct", "digits3:13"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "1 3 4 9 10 12 13\n"
