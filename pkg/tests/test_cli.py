import csv
import io
import json

import pytest

from artifact.cli import ORACLE_HEADER, PRECISION_ENV, RATIO_HEADER, parse_config, run
from artifact.holes import HoleConfig


def _write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def test_p(capsys):
    assert run(["p", "--x", "0", "--y", "0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("1/3 + 0·T ≈ 0.333333")


def test_p_with_grid(capsys):
    assert run(["p", "--x", "-1", "--y", "-1", "--grid", "128"]) == 0
    assert "quadrature" in capsys.readouterr().out
    assert run(["p", "--x", "0", "--y", "0", "--grid", "8"]) == 1


def test_ucoef(capsys):
    assert run(["ucoef", "--s", "0", "--a", "2", "--b", "0"]) == 0
    assert capsys.readouterr().out.startswith("1/2·T ≈ 0.27566")
    assert run(["ucoef", "--s", "-1", "--a", "0", "--b", "0"]) == 1


def test_omega(tmp_path, capsys):
    path = _write(tmp_path, "pair.json", {"holes": [{"kind": "E", "x": 0, "y": 0}, {"kind": "W", "x": 0, "y": 3}]})
    assert run(["omega", "--config", path]) == 0
    out = capsys.readouterr().out
    assert "T^2" in out and "≈" in out


def test_parse_config(tmp_path):
    single = _write(tmp_path, "a.json", {"holes": [{"kind": "E", "x": 0, "y": 0}]})
    assert len(parse_config(single).holes) == 1
    tri = _write(tmp_path, "b.json", {"holes": [{"kind": "triangle", "orientation": "E", "side": 6, "anchor": [0, 0]}]})
    assert len(parse_config(tri).holes) == 3


def test_round_trip(tmp_path):
    src = _write(tmp_path, "c.json", {"holes": [{"kind": "triangle", "orientation": "W", "side": 4, "anchor": [3, 0]},
                                                {"kind": "E", "x": -5, "y": 2}]})
    cfg = parse_config(src)
    again = parse_config(_write(tmp_path, "d.json", cfg.to_json()))
    assert again == cfg


def test_domain_errors(tmp_path, capsys):
    odd = _write(tmp_path, "odd.json", {"holes": [{"kind": "triangle", "orientation": "E", "side": 3, "anchor": [0, 0]}]})
    assert run(["omega", "--config", odd]) == 1
    assert "odd" in capsys.readouterr().err
    bad = _write(tmp_path, "bad.json", '{"holes": [\n  {"kind": "E", "x": 0,,}]}')
    assert run(["omega", "--config", bad]) == 1
    err = capsys.readouterr().err
    assert "bad.json:2:" in err and "malformed JSON" in err
    overlap = _write(tmp_path, "ov.json", {"holes": [{"kind": "E", "x": 0, "y": 0}, {"kind": "E", "x": 1, "y": 0}]})
    assert run(["omega", "--config", overlap]) == 1
    assert run(["omega", "--config", str(tmp_path / "missing.json")]) == 1


def test_usage_errors():
    assert run(["frobnicate"]) == 2
    assert run(["p", "--x", "0"]) == 2
    assert run([]) == 2


def test_precision(monkeypatch, capsys):
    monkeypatch.setenv(PRECISION_ENV, "200")
    assert run(["p", "--x", "-1", "--y", "-1"]) == 0
    long_out = capsys.readouterr().out
    assert len(long_out.split("≈")[1].strip()) > 40
    assert run(["--precision", "53", "p", "--x", "-1", "--y", "-1"]) == 0
    assert len(capsys.readouterr().out.split("≈")[1].strip()) < 20
    assert run(["--precision", "20", "p", "--x", "0", "--y", "0"]) == 1
    monkeypatch.setenv(PRECISION_ENV, "lots")
    assert run(["p", "--x", "0", "--y", "0"]) == 1


def test_verify_identities(capsys):
    assert run(["verify-identities", "--suite", "mpp", "--trials", "10", "--seed", "7"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert first[0]["failures"] == 0 and first[0]["seed"] == 7 and first[0]["trials"] == 10
    assert run(["verify-identities", "--suite", "mpp", "--trials", "10", "--seed", "7"]) == 0
    assert json.loads(capsys.readouterr().out) == first


def test_oracle_csv(tmp_path, capsys):
    path = _write(tmp_path, "pair.json", {"holes": [{"kind": "E", "x": 1, "y": 1}, {"kind": "W", "x": 2, "y": 2}]})
    out = tmp_path / "o.csv"
    assert run(["-o", str(out), "oracle", "--config", path, "--N", "6", "--method", "kasteleyn"]) == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ORACLE_HEADER and rows[1][0] == "6"
    charged = _write(tmp_path, "e.json", {"holes": [{"kind": "E", "x": 0, "y": 0}]})
    assert run(["oracle", "--config", charged, "--N", "5"]) == 1


def test_ratio_and_predict(tmp_path, capsys):
    path = _write(tmp_path, "m.json", {"multiholes": [{"orientation": "E", "q": 1, "positions": [0], "offset": [0, 0]},
                                                      {"orientation": "W", "q": 1, "positions": [0], "offset": [3, 0]}]})
    assert run(["ratio-exp", "--config", path, "--R", "3", "6"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == RATIO_HEADER and len(rows) == 3
    assert run(["predict", "--config", path, "--R", "3", "--method", "superposition"]) == 0
    assert capsys.readouterr().out.startswith("R,predicted")
    tri = _write(tmp_path, "t.json", {"triangles": [{"orientation": "E", "side": 4, "offset": [0, 0]}]})
    assert run(["ratio-exp", "--config", tri, "--R", "1"]) == 0
    missing = _write(tmp_path, "x.json", {"multiholes": [{"q": 1, "positions": [0]}]})
    assert run(["predict", "--config", missing, "--R", "1"]) == 1
    assert run(["predict", "--config", _write(tmp_path, "y.json", {}), "--R", "1"]) == 1


def test_convergence(capsys):
    assert run(["convergence", "--a", "0", "--b", "0", "--n", "1", "--r", "8", "16"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["r", "remainder", "scaled_remainder"] and len(rows) == 3
    assert run(["convergence", "--n", "-1"]) == 1
