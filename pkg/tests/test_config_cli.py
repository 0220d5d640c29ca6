import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singtool import config as cfgmod
from singtool import emit
from singtool.cli import main
from singtool.errors import ConfigError

finite = st.floats(-10, 10, allow_nan=False)


@given(st.lists(finite, min_size=1, max_size=8), st.tuples(finite, finite),
       st.floats(1e-12, 1e-3), st.integers(1, 12))
def test_config_round_trip(taus, point, tol, kmax):
    data = {"command": "classify", "w": {"taus": taus}, "point": list(point),
            "tol": tol, "kmax": kmax}
    cfg = cfgmod.parse_config(data)
    again = cfgmod.loads(cfg.to_json())
    assert again == cfg
    assert again.config_hash() == cfg.config_hash()


@pytest.mark.parametrize("bad,field", [
    ({"command": "nope"}, "command"),
    ({"command": "classify", "typo": 1}, "typo"),
    ({"command": "classify", "w": {"form": "tau"}}, "w.taus"),
    ({"command": "classify", "tol": -1}, "tol"),
    ({"command": "classify", "kmax": 0}, "kmax"),
    ({"command": "hyperbolic", "model": {"R": "1", "S": ""}}, "model.S"),
    ({"command": "map-grid", "formats": ["png"]}, "formats"),
])
def test_config_errors_name_the_field(bad, field):
    with pytest.raises(ConfigError) as exc:
        cfgmod.parse_config(bad)
    assert field in str(exc.value)


def test_json_error_location():
    with pytest.raises(ConfigError) as exc:
        cfgmod.loads('{"command": "classify",\n  "k": }')
    assert "line 2" in str(exc.value)


def test_emit_formatting():
    assert emit.fmt(-0.0) == "0"
    assert emit.fmt(1 / 3) == "0.333333333333"
    assert emit.csv_text(["a", "b"], [(1, 2.5)]) == "a,b\n1,2.5\n"
    with pytest.raises(ValueError):
        emit.json_text({"x": float("nan")})


def _write_cfg(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_classify_command(tmp_path, capsys):
    path = _write_cfg(tmp_path, {"command": "classify", "w": {"taus": [0, 0, 0, 0, 0, 1]},
                                 "point": [0, 0], "out": str(tmp_path)})
    assert main(["classify", "--config", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["order"] == 2 and doc["exponents"]["gamma"] == 3
    assert all(c["pass"] for c in doc["checks"])
    assert (tmp_path / "classify.json").read_text() == json.dumps(doc, sort_keys=True, indent=2) + "\n" \
        or json.loads((tmp_path / "classify.json").read_text()) == doc


def test_hyperbolic_command(tmp_path, capsys):
    path = _write_cfg(tmp_path, {"command": "hyperbolic",
                                 "model": {"R": "3 + 1/(2*(1 + r))", "S": "3", "t": "r**3 + s + r*s"},
                                 "region": [-0.3, 0.3, -0.3, 0.3]})
    assert main(["hyperbolic", "--config", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdicts"][0]["kind"] == "cusp"
    assert doc["verdicts"][0]["first_nonvanishing"] == 2


def test_map_grid_and_empty_region(tmp_path, capsys):
    out = tmp_path / "grid"
    path = _write_cfg(tmp_path, {"command": "map-grid", "w": {"taus": [0, 0, 0, 0, 1]},
                                 "region": [0, 0, -1, 1], "out": str(out)})
    assert main(["map-grid", "--config", path]) == 0
    assert (out / "map_grid.csv").read_text() == "u,v,t,x,J\n"
    assert json.loads(capsys.readouterr().out)["rows"] == 0


def test_exit_codes(tmp_path, capsys):
    path = _write_cfg(tmp_path, {"command": "classify", "w": {"taus": [1]}, "bogus": 1})
    assert main(["classify", "--config", path]) == 2
    assert "bogus" in capsys.readouterr().err
    path = _write_cfg(tmp_path, {"command": "map-grid", "w": {"taus": [1]}}, "m.json")
    assert main(["classify", "--config", path]) == 2
    assert main(["classify", "--config", str(tmp_path / "missing.json")]) == 2
    flat = _write_cfg(tmp_path, {"command": "classify", "w": {"taus": [0] * 20 + [1]}}, "f.json")
    assert main(["classify", "--config", flat]) == 1
    assert "UnresolvedOrder" in capsys.readouterr().err
    assert main(["normal-form", "--k", "-1", "--out", str(tmp_path)]) != 0


def test_file_commands_are_deterministic(tmp_path):
    for sub in ("a", "b"):
        out = str(tmp_path / sub)
        assert main(["normal-form", "--k", "2", "--res", "9", "--out", out]) == 0
        assert main(["singular-curves", "--k", "3", "--out", out]) == 0
        assert main(["regularize", "--k", "2", "--slices=-1,1", "--out", out]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(names) == 8
    for n in names:
        assert (tmp_path / "a" / n).read_bytes() == (tmp_path / "b" / n).read_bytes()
    svg = (tmp_path / "a" / "normal_form_k2.svg").read_text()
    assert svg.startswith("<svg") or svg.startswith("<?xml")


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "singtool.cli", "verify", "--suite", "schur"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert all(line.startswith("PASS") for line in out.stdout.splitlines())
