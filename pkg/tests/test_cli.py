"""Front-end behavior: exit codes, schemas, determinism, cache wiring."""

import json
import subprocess
import sys

import pytest

from redpairs import A2Weight
from redpairs.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("REDPAIRS_CACHE_DIR", str(tmp_path / "cache"))


def test_sl2_simple_yes(capsys):
    code, doc = run_json(capsys, "sl2", "simple", "-p", "5", "-l", "11")
    assert code == 0
    assert doc["schema"] == "redpairs/verdict/1"
    assert doc["kind"] == "Yes"


def test_sl2_simple_no_exit_code(capsys):
    code, doc = run_json(capsys, "sl2", "simple", "-p", "5", "-l", "4")
    assert code == 3
    assert doc["kind"] == "No"


def test_sl2_simple_explain_and_oracle(capsys):
    code, doc = run_json(
        capsys, "sl2", "simple", "-p", "5", "-l", "11", "--explain", "--oracle"
    )
    assert code == 0
    assert doc["digits"] == [1, 2]
    assert doc["normalized_weight"] == 11
    # factor 12 of chL(11)^2 is linked to 2: the one-sided oracle stays quiet
    assert doc["oracle"]["kind"] == "Inconclusive"
    assert doc["oracle_agrees"] is True
    code, doc = run_json(capsys, "sl2", "simple", "-p", "5", "-l", "2", "--oracle")
    assert code == 0
    assert doc["oracle"]["kind"] == "ProvenYes"
    assert doc["oracle_agrees"] is True


def test_sl2_weyl_oracle_agreement(capsys):
    code, doc = run_json(capsys, "sl2", "weyl", "-p", "7", "-n", "16", "--oracle")
    assert code == 0
    assert doc["kind"] == "Yes" and doc["oracle_agrees"] is True
    code, doc = run_json(capsys, "sl2", "weyl", "-p", "7", "-n", "13", "--oracle")
    assert code == 3
    assert doc["kind"] == "No" and doc["oracle_agrees"] is True


def test_errors_are_structured(capsys):
    code, doc = run_json(capsys, "sl2", "simple", "-p", "9", "-l", "2")
    assert code == 1
    assert doc["schema"] == "redpairs/error/1"
    code, doc = run_json(capsys, "sl2", "simple", "-p", "5", "-l", "0")
    assert code == 1
    code, doc = run_json(capsys, "sl2", "simple", "-p", "5", "--weight", "notanint")
    assert code == 1
    assert doc["error_type"] == "usage"


def test_scan_tsv_format(capsys):
    code, out = run_cli(capsys, "sl2", "scan", "--kind", "weyl", "-p", "5", "--max", "9")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema: redpairs/scan/1"
    assert lines[1].split("\t") == ["p", "weight", "kind", "reasons"]
    assert len(lines) == 2 + 10
    assert lines[2].split("\t")[1] == "0"


def test_scan_json_and_jobs_deterministic(capsys):
    args = ("sl2", "scan", "--kind", "simple", "-p", "5", "--max", "40", "--oracle")
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args, "--jobs", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    code3, doc = run_json(capsys, *args, "--format", "json")
    assert code3 == 0
    assert doc["schema"] == "redpairs/scan/1"
    assert len(doc["rows"]) == 40
    # simple scans start at weight 1: the trivial module is excluded
    assert doc["rows"][0]["weight"] == 1


def test_verify_identities(capsys):
    code, out = run_cli(capsys, "verify-identities", "-p", "5", "--max-m", "6")
    assert code == 0
    assert "low" in out and "mid" in out and "top" in out
    for line in out.splitlines()[2:]:
        assert line.split("\t")[2] == "0"
    code, _ = run_cli(capsys, "verify-identities", "-p", "2")
    assert code == 1


def test_sl3_analyze_flagship(capsys):
    code, doc = run_json(capsys, "sl3", "analyze", "-p", "5", "-w", "5,1", "--explain")
    assert code == 0
    assert doc["schema"] == "redpairs/mask/1"
    assert doc["verdict"]["kind"] == "ProvenYes"
    assert [[6, 6], 1] in doc["factors"]
    assert doc["digits"] == [[0, 1], [1, 0]]


def test_sl3_analyze_missing_data_exit(capsys):
    code, doc = run_json(capsys, "sl3", "analyze", "-p", "5", "-w", "1,1")
    assert code == 2
    assert doc["error_type"] == "adaptation-failure"
    assert doc["missing_weight"] == [2, 2]


def test_sl3_analyze_with_table(capsys, tmp_path, p5_table):
    path = tmp_path / "t.jsonl"
    char = p5_table[(5, A2Weight(2, 2))]
    path.write_text(
        json.dumps({"p": 5, "weight": [2, 2], "character": char.to_json_dict()}) + "\n"
    )
    code, doc = run_json(
        capsys, "sl3", "analyze", "-p", "5", "-w", "1,1", "--table", str(path)
    )
    assert code == 4
    assert doc["verdict"]["kind"] == "Inconclusive"
    code, doc = run_json(
        capsys, "sl3", "analyze", "-p", "5", "-w", "1,1", "--table", "/no/such/file"
    )
    assert code == 1
    assert doc["error_type"] == "io-error"


def test_sl3_example_machine(capsys):
    code, doc = run_json(
        capsys, "sl3", "example-machine", "-p", "7", "--base", "1,1", "--bump", "1,1", "-n", "2"
    )
    assert code == 0
    assert doc["schema"] == "redpairs/certificate/1"
    assert doc["weight"] == [50, 50]
    code, doc = run_json(
        capsys, "sl3", "example-machine", "-p", "7", "--base", "1,1", "--bump", "5,0", "-n", "1"
    )
    assert code == 1


def test_byte_determinism(capsys):
    args = ("sl3", "analyze", "-p", "7", "-w", "1,1")
    _, out1 = run_cli(capsys, *args)
    _, out2 = run_cli(capsys, *args)
    assert out1 == out2


def test_cache_roundtrip(tmp_path, monkeypatch, capsys):
    cache_dir = tmp_path / "store"
    monkeypatch.setenv("REDPAIRS_CACHE_DIR", str(cache_dir))
    code, _ = run_cli(capsys, "sl2", "weyl", "-p", "5", "-n", "7", "--oracle")
    assert code == 0
    store = cache_dir / "characters.jsonl"
    assert store.exists()
    first = store.read_text()
    assert first
    # a second identical run must not duplicate entries
    run_cli(capsys, "sl2", "weyl", "-p", "5", "-n", "7", "--oracle")
    assert store.read_text() == first
    # --no-cache leaves the store untouched
    run_cli(capsys, "sl2", "weyl", "-p", "5", "-n", "12", "--oracle", "--no-cache")
    assert store.read_text() == first
    # corrupted lines are skipped, not fatal
    with store.open("a") as fh:
        fh.write("this is not json\n")
        fh.write(json.dumps({"kind": "sl2-tilting", "p": 5, "weight": 2,
                             "character": {"rank": 1, "terms": [[[2], 7]]}}) + "\n")
    code, doc = run_json(capsys, "sl2", "weyl", "-p", "5", "-n", "7", "--oracle")
    assert code == 0 and doc["oracle_agrees"] is True


def test_selftest_command(capsys):
    code, out = run_cli(capsys, "selftest")
    assert code == 0
    assert "selftest: PASS" in out.splitlines()[-1]


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "redpairs.cli", "sl2", "simple", "-p", "3", "-l", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "Yes"
