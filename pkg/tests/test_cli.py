import csv
import io
import json

import pytest

from steinlab.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, load_pair_file, main
from steinlab.errors import ConfigError


def read_csv(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def test_verify_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["verify", "--batch-size", "2", "--seed", "7", "--out", str(a)]) == EXIT_OK
    assert main(["verify", "--batch-size", "2", "--seed", "7", "--workers", "3", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_verify_batch_size_one(tmp_path):
    out = tmp_path / "v.csv"
    assert main(["verify", "--batch-size", "1", "--out", str(out)]) == EXIT_OK
    rows = read_csv(out)
    assert {r["instance"] for r in rows} == {"0"}
    assert all(r["pass"] == "true" for r in rows)


def test_injected_fault_sets_exit_code(tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert main(["verify", "--batch-size", "1", "--inject-fault", "--out", str(out)]) == EXIT_FAIL
    failed = [r for r in read_csv(out) if r["pass"] == "false"]
    assert [r["claim"] for r in failed] == ["A <= I (injected)"]
    assert "FAILED" in capsys.readouterr().err


def test_cap_rejected_before_compute(capsys):
    assert main(["stein", "--n-max", "13"]) == EXIT_CONFIG
    assert "exceeds cap" in capsys.readouterr().err


@pytest.mark.parametrize("args", [["--n-min", "4", "--n-max", "2"], ["--slack", "0"], ["--cluster-tol", "-1"], ["--a", "x"]])
def test_bad_config(args, capsys):
    assert main(["stein", *args]) == EXIT_CONFIG
    assert "configuration error" in capsys.readouterr().err


def test_json_matches_csv(tmp_path):
    c, j = tmp_path / "o.csv", tmp_path / "o.json"
    base = ["stein", "--pair", "plus-vs-diag", "--n-max", "3", "--s-grid", "0:1:0.5"]
    assert main([*base, "--out", str(c)]) == EXIT_OK
    assert main([*base, "--format", "json", "--out", str(j)]) == EXIT_OK
    rows_csv = read_csv(c)
    doc = json.loads(j.read_text())
    assert len(doc["rows"]) == len(rows_csv)
    for rc, rj in zip(rows_csv, doc["rows"]):
        assert rc["claim"] == rj["claim"]
        assert rc["pass"] == ("true" if rj["pass"] else "false")
        if isinstance(rj["margin"], float) and rj["margin"] == rj["margin"]:
            assert float(rc["margin"]) == rj["margin"]


def test_hiai_petz_and_exponents_run(tmp_path):
    out = tmp_path / "h.csv"
    assert main(["hiai-petz", "--pair", "plus-vs-diag", "--n-max", "4", "--out", str(out)]) == EXIT_OK
    rows = read_csv(out)
    assert sorted({int(r["n"]) for r in rows}) == [1, 2, 3, 4]
    out = tmp_path / "e.csv"
    assert main(["exponents", "--pair", "random:2", "--n-max", "2", "--out", str(out)]) == EXIT_OK


def test_pair_file(tmp_path):
    doc = {"dim": 2, "rho": [[0.7, 0], [0.1, 0.05], [0.1, -0.05], [0.3, 0]], "sigma": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(doc))
    pair = load_pair_file(path)
    assert pair.d == 2
    out = tmp_path / "s.csv"
    assert main(["stein", "--pair", str(path), "--n-max", "2", "--out", str(out)]) == EXIT_OK


def test_pair_file_diagnostics(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "rho": [}')
    with pytest.raises(ConfigError, match=r"bad.json:2:"):
        load_pair_file(bad)
    bad.write_text(json.dumps({"dim": 2, "rho": [[1, 0]] * 4}))
    with pytest.raises(ConfigError, match="sigma"):
        load_pair_file(bad)
    bad.write_text(json.dumps({"dim": 2, "rho": [[1, 0], [0, 0], [0, 0], "x"], "sigma": [[0.5, 0]] * 4}))
    with pytest.raises(ConfigError, match=r"entry 3 \(row 1, col 1\)"):
        load_pair_file(bad)


def test_batch_size_one_covers_every_category(tmp_path):
    from steinlab.cli import VERIFY_CATEGORIES

    out = tmp_path / "v.csv"
    main(["verify", "--batch-size", "1", "--out", str(out)])
    assert {r["category"] for r in read_csv(out)} == set(VERIFY_CATEGORIES)
