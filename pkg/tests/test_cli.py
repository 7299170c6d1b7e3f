import csv
import io
import json

import pytest

from serrors.cli import main
from test_scenario import COIN


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def _drop_timing(recs):
    return [{k: v for k, v in r.items() if k != "timing"} for r in recs]


@pytest.fixture
def coin_file(tmp_path):
    path = tmp_path / "coin.json"
    path.write_text(json.dumps(COIN))
    return str(path)


def test_reproduce_freeman_csv(capsys):
    code, out, _ = _run(capsys, "reproduce", "freeman", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    assert rows[0]["Number of patient preferring A:B"] == "15:5"
    assert float(rows[3]["Ratio of Evidences"]) == pytest.approx(219.66, rel=1e-4)


def test_reproduce_example1_exit_code(capsys):
    code, out, _ = _run(capsys, "reproduce", "example1")
    assert code == 1
    assert "MISMATCH" in out


def test_reproduce_records_are_deterministic(capsys):
    _, first, _ = _run(capsys, "reproduce", "esp", "--format", "records")
    _, second, _ = _run(capsys, "reproduce", "esp", "--format", "records")
    assert _drop_timing(_records(first)) == _drop_timing(_records(second))
    assert _records(first)[-1]["record"] == "summary"


def test_test_command(capsys, coin_file):
    code, out, _ = _run(capsys, "test", coin_file, "--format", "records")
    assert code == 0
    (rec,) = _records(out)
    assert rec["record"] == "result"
    assert rec["decision"]["verdict"] == "RejectH0"
    code, out, _ = _run(capsys, "test", coin_file, "--ratio", "0.1")
    assert "AcceptH0" in out


def test_test_command_writes_file(capsys, coin_file, tmp_path):
    target = tmp_path / "out.jsonl"
    code, _, _ = _run(capsys, "test", coin_file, "--out", str(target))
    assert code == 0
    (rec,) = _records(target.read_text())
    assert rec["ratio_01"] == pytest.approx(0.366, abs=5e-4)


def test_design_command(capsys):
    code, out, _ = _run(capsys, "design", "--format", "records", "--n-grid", "20", "100")
    assert code == 0
    recs = _records(out)
    assert recs[0]["record"] == "design" and recs[0]["n"] == 20
    assert recs[0]["implicit_ratio"] == pytest.approx(0.6316, abs=1e-4)
    prof = [r for r in recs if r["record"] == "profile"]
    assert [r["n"] for r in prof] == [20, 100]
    assert prof[1]["fixed-r alpha"] == pytest.approx(3.34e-4, rel=0.01)


def test_verify_command(capsys):
    code, out, _ = _run(capsys, "verify", "lemma1", "--format", "records")
    assert code == 0
    recs = _records(out)
    assert recs[0]["record"] == "verification" and recs[0]["passed"]


def test_usage_errors(capsys, coin_file, tmp_path):
    assert _run(capsys, "test", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(COIN | {"family": "poisson"}))
    code, _, err = _run(capsys, "test", str(bad))
    assert code == 2 and "family" in err
    with pytest.raises(SystemExit) as info:
        main(["test", coin_file, "--ratio", "1", "--a", "2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["reproduce", "table9"])
