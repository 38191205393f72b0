import csv
import io
import json
import subprocess
import sys

import pytest

from trunczeta.cli import main
from trunczeta.enumeration import CountTable


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--prime", "3", "--exponent", "2")
    assert code == 0
    assert out.split()[0] == "13"
    assert "enumeration" in out
    code, out, _ = run(capsys, "count", "--prime", "2", "--exponent", "2", "--cocyclic")
    assert out.split()[0] == "4"


@pytest.mark.parametrize("method", ["enum", "cells", "formula"])
def test_count_methods_agree(capsys, method):
    _, out, _ = run(capsys, "count", "--prime", "2", "--exponent", "9", "--method", method)
    assert out.split()[0] == "4011"
    _, out, _ = run(capsys, "count", "--prime", "2", "--exponent", "9", "--cocyclic", "--method", method)
    assert out.split()[0] == "1024"


def test_zeta(capsys):
    code, out, _ = run(capsys, "zeta", "--which", "subring", "--prime", "3", "--terms", "3")
    assert code == 0
    assert out.strip() == "1,1,13,49"
    _, out, _ = run(capsys, "zeta", "--which", "subring", "--prime", "2", "--terms", "2", "--display")
    assert out.strip() == "1,1,5"
    _, out, _ = run(capsys, "zeta", "--which", "cocyclic", "--prime", "2", "--terms", "6")
    assert out.strip() == "1,1,4,8,16,32,128"


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--prime", "4", "--exponent", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--prime", "3", "--exponent", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "constants", "--which", "D", "--truncation", "2")
    assert code == 2 and "truncation" in err


def test_budget_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("TRUNCZETA_BUDGET", "10")
    code, out, err = run(capsys, "count", "--prime", "5", "--exponent", "6")
    assert code == 3
    assert out == ""
    assert "budget" in err


def test_table_json_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--prime", "2", "--max-exponent", "6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["prime"] == 2
    assert [r["subrings"] for r in data["rows"]] == ["1", "1", "7", "19", "59", "107", "427"]
    table = CountTable.from_dict(data)
    assert json.dumps(table.to_dict(), indent=2) + "\n" == out


def test_table_csv(capsys):
    _, out, _ = run(capsys, "table", "--prime", "3", "--max-exponent", "3", "--format", "csv", "--method", "formula")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["prime", "m", "subrings", "cocyclic", "method"]
    assert rows[3] == ["3", "2", "13", "9", "formula"]
    assert len(rows) == 5


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert code == 0
    assert "display mismatches" in out
    assert "result: OK" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities", "--json")
    data = json.loads(out)
    assert data["ok"] is True
    names = {m["formula"] for m in data["display_mismatches"]}
    assert names == set()  # identities suite reports through its checks, not the mismatch list
    assert any(c["name"] == "T1+..+T6 == SUBRING_TWO_DISPLAYED" and not c["passed"] for c in data["checks"])


def test_verify_failure_exit_1(capsys, monkeypatch):
    from trunczeta import verification

    def broken(name):
        rep = verification.Report()
        rep.add("always fails", False)
        return rep

    monkeypatch.setattr("trunczeta.cli.run_suite", broken)
    code, _, err = run(capsys, "verify", "--suite", "lemma")
    assert code == 1
    assert "failed" in err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--which", "D", "--truncation", "10000")
    assert code == 0
    assert out.startswith("D = 1.5222")
    assert "tail bound" in out
    _, out, _ = run(capsys, "constants", "--which", "C", "--truncation", "10000", "--variant", "corrected")
    assert out.startswith("C = 6.0375")


def test_asymptotics(capsys):
    code, out, _ = run(capsys, "asymptotics", "--bound", "1000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "B\ts(B)\ts(B)/B^1.5"
    assert [l.split("\t")[0] for l in lines[1:4]] == ["10", "100", "1000"]
    _, out, _ = run(capsys, "asymptotics", "--bound", "9", "--cocyclic", "--odd-only")
    assert out.splitlines()[1].split("\t")[:2] == ["9", "13"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "trunczeta", "count", "--prime", "3", "--exponent", "2"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.split()[0] == "13"
