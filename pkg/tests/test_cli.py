from __future__ import annotations

import csv
import io
import json

import pytest

from sigmastab import cli
from sigmastab.blueprint import CodeBlueprint
from sigmastab.manifest import MANIFEST


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_no_arguments_prints_usage(capsys):
    rc, out, err = run(capsys)
    assert rc == 2 and "usage" in err


def test_factors(capsys):
    rc, out, _ = run(capsys, "factors", "--n", "5")
    data = json.loads(out)
    assert rc == 0 and data["split_field"]["degree"] == 4


@pytest.fixture
def code13(tmp_path, capsys):
    path = tmp_path / "c13.json"
    rc, _, _ = run(capsys, "construct", "--n", "13", "--out", str(path))
    assert rc == 0
    return path


def test_construct_round_trip(code13):
    bp = CodeBlueprint.from_json(code13.read_text())
    assert (bp.n, bp.k, bp.m) == (13, 1, -1)
    assert CodeBlueprint.from_json(bp.dumps()).dumps() == bp.dumps()


def test_construct_auto_m_and_refusal(capsys):
    rc, out, _ = run(capsys, "construct", "--n", "9", "--auto-m")
    assert rc == 0 and json.loads(out)["m"] == -1
    rc, _, err = run(capsys, "construct", "--n", "7")
    assert rc == 1 and "odd" in err


def test_distance_all(code13, capsys):
    rc, out, _ = run(capsys, "distance", "--code", str(code13))
    row = next(csv.DictReader(io.StringIO(out)))
    assert rc == 0
    assert row["bch_d"] == "5" and row["brute_detect"] == "4" and row["brute_correct"] == "2"


def test_distance_budget_skips(tmp_path, capsys):
    path = tmp_path / "c21.json"
    run(capsys, "construct", "--n", "21", "--g-extra", "3,5,9", "--h-select", "2,7", "--out", str(path))
    rc, out, err = run(capsys, "distance", "--code", str(path), "--mode", "brute-sigma", "--budget", "2^20")
    row = next(csv.DictReader(io.StringIO(out)))
    assert rc == 0 and row["brute_detect"] == "skipped" and "skipped" in err


def test_decode(code13, capsys):
    e1 = "0" * 4 + "1" + "0" * 8
    rc, out, _ = run(capsys, "decode", "--code", str(code13), "--e1", e1, "--e2", "0x5")
    # joint weight 3 is past the decoding radius: reported, not recovered
    res = json.loads(out)
    assert rc == 0 and not res["recovered"]
    rc, out, _ = run(capsys, "decode", "--code", str(code13), "--e1", e1, "--e2", "0x10")
    res = json.loads(out)
    assert res["success"] and res["recovered"]
    rc, _, err = run(capsys, "decode", "--code", str(code13), "--e1", "101", "--e2", "0")
    assert rc == 1


def test_parse_vector():
    assert cli.parse_vector("0x3", 4, 2) == [1, 1, 0, 0]
    assert cli.parse_vector("1,0,2", 3, 3) == [1, 0, 2]
    with pytest.raises(Exception):
        cli.parse_vector("0x10", 4, 2)


def test_simulate_and_threshold(tmp_path, capsys):
    paths = []
    for n in (11, 13):
        code = tmp_path / f"c{n}.json"
        run(capsys, "construct", "--n", str(n), "--out", str(code))
        out = tmp_path / f"q{n}.csv"
        dat = tmp_path / f"q{n}.dat"
        rc, _, _ = run(
            capsys, "simulate", "--code", str(code), "--probs", "0,0.05,0.3", "--trials", "4000",
            "--seed", "1", "--out", str(out), "--dat", str(dat),
        )
        assert rc == 0 and dat.exists()
        paths.append(str(out))
    again = tmp_path / "again.csv"
    run(capsys, "simulate", "--code", str(tmp_path / "c11.json"), "--probs", "0,0.05,0.3",
        "--trials", "4000", "--seed", "1", "--out", str(again))
    assert again.read_text() == (tmp_path / "q11.csv").read_text()
    rc, out, _ = run(capsys, "threshold", *paths)
    assert rc == 0 and "threshold estimate" in out
    with pytest.raises(SystemExit):
        cli.main(["threshold", paths[0]])


def test_table1_deterministic(capsys):
    rc, first, _ = run(capsys, "table1", "--budget", "2^16")
    _, second, _ = run(capsys, "table1", "--budget", "2^16")
    rows = list(csv.DictReader(io.StringIO(first)))
    assert rc == 0 and first == second and len(rows) == len(MANIFEST)
    assert rows[0]["consecutive_roots"] == "beta^2,beta^3"


def test_missing_file(capsys):
    rc, _, err = run(capsys, "distance", "--code", "/nonexistent.json")
    assert rc == 1 and err
