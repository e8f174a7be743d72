import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest
import yaml

from flighttrim.cli import main
from flighttrim.config import load_schema, load_scenario
from flighttrim.errors import ConfigError


def run(argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_find_hover():
    code, out, _ = run(["find", "--preset", "hover"])
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("find"))
    assert len(doc["equilibria"]) == 2 and doc["continuum"] is False
    pos = doc["positive_thrust_equilibria"]
    assert len(pos) == 1 and pos[0]["theta_deg"] == pytest.approx(0.0, abs=1e-8)
    assert pos[0]["thrust_N"] == pytest.approx(9.81)


def test_counterexample_piped_into_find(monkeypatch):
    code, cfg, _ = run(["counterexample", "--emit-config"])
    assert code == 0
    code, out, _ = run(["find", "--config", "-"], stdin=cfg, monkeypatch=monkeypatch)
    assert code == 3
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("find"))
    assert doc["equilibria"] == [] and doc["positive_thrust_equilibria"] == []


def test_counterexample_report():
    code, out, _ = run(["counterexample", "--c0", "0.2", "--ka", "2"])
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("check"))
    assert code == 0 and doc["satisfied"] and doc["equilibrium_count"] == 0
    assert doc["max_dev_from_one"] <= 1e-9
    assert run(["counterexample", "--c0", "-1"])[0] == 1


def test_scan_hover_matches_weight_torque():
    code, out, _ = run(["scan", "--preset", "hover", "--samples", "5"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    for r in rows:
        th = math.radians(float(r["theta_deg"]))
        assert float(r["f_value"]) == pytest.approx(-9.81 * math.sin(th), abs=1e-12)


def test_scan_counterexample_is_constant():
    code, out, _ = run(["scan", "--preset", "lemma1", "--samples", "360"])
    vals = [float(r["f_value"]) for r in csv.DictReader(io.StringIO(out))]
    np.testing.assert_allclose(vals, 1.0, atol=1e-12)


@pytest.mark.parametrize("preset", ["hover", "bisym-demo", "lemma1"])
def test_scan_sign_changes_equal_transversal_roots(preset):
    _, out, _ = run(["scan", "--preset", preset, "--samples", "3600"])
    f = np.array([float(r["f_value"]) for r in csv.DictReader(io.StringIO(out))])
    # a crossing is a strict sign change between neighbours or an exact zero between opposite signs
    changes = int(np.sum(f * np.roll(f, -1) < 0) + np.sum((f == 0) & (np.roll(f, 1) * np.roll(f, -1) < 0)))
    _, found, _ = run(["find", "--preset", preset])
    eq = json.loads(found)["equilibria"]
    assert changes == sum(e["transversality"] == "sign_change" for e in eq)


def test_scan_json_and_bad_samples():
    code, out, _ = run(["scan", "--preset", "hover", "--samples", "4", "--output", "json"])
    assert code == 0 and len(json.loads(out)["f_value"]) == 4
    code, _, err = run(["scan", "--preset", "hover", "--samples", "1"])
    assert code == 1 and "samples" in err


def test_check_stall_condition_naca0021():
    code, out, _ = run(["check", "stall-condition", "--preset", "hover"])
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("check"))
    assert code == 0 and doc["satisfied"]
    assert 0 < doc["alpha_s_deg"] < 90 and doc["margin"] < 0


def test_check_passivity_and_bisymmetry_on_counterexample():
    code, out, _ = run(["check", "passivity", "--preset", "lemma1"])
    assert code == 0 and json.loads(out)["satisfied"]
    code, out, _ = run(["check", "bisymmetry", "--preset", "lemma1"])
    assert code == 3 and not json.loads(out)["satisfied"]
    code, out, _ = run(["check", "symmetry", "--preset", "lemma1", "--output", "csv"])
    assert code == 0 and "satisfied,True" in out


def test_check_theorem_reports_are_seeded():
    a = run(["check", "theorem1", "--preset", "bisym-demo", "--samples", "30", "--seed", "4"])
    b = run(["check", "theorem1", "--preset", "bisym-demo", "--samples", "30", "--seed", "4"])
    assert a == b and a[0] == 0
    doc = json.loads(a[1])
    jsonschema.validate(doc, load_schema("check"))
    assert doc["scenario_count"] == 30 and doc["seed"] == 4
    code, out, _ = run(["check", "theorem2", "--preset", "hover", "--samples", "36"])
    assert code == 0 and json.loads(out)["scenario_count"] == 36


def test_bisym_sweep_always_finds_equilibria():
    rng = np.random.default_rng(0)
    for _ in range(10):
        vx, vy, ax, ay = rng.uniform(-20, 20, 4)
        code, out, _ = run(
            ["find", "--preset", "bisym-demo", "--set", f"condition.v_ref=[{vx}, {vy}]", "--set", f"condition.a_ref=[{ax}, {ay}]"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["delta_deg"] == pytest.approx(math.degrees(0.4))
        assert doc["positive_thrust_equilibria"]


def test_find_csv_output():
    code, out, _ = run(["find", "--preset", "bisym-demo", "--output", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2 and rows[0]["transversality"] == "sign_change"


def test_config_file_with_relative_polar(tmp_path):
    (tmp_path / "foil.csv").write_text("alpha_deg,cl,cd\n0,0,0.01\n90,1,1.2\n180,0,0.02\n")
    cfg = {
        "vehicle": {"mass": 1.0, "delta_deg": 20},
        "model": {"polar": "foil.csv", "ka": 0.1, "symmetry": "symmetric", "extension": "symmetric"},
        "condition": {"v_ref": [10, 0]},
        "solver": {"scan_points": 720},
    }
    p = tmp_path / "s.yaml"
    p.write_text(yaml.safe_dump(cfg))
    code, out, _ = run(["find", "--config", str(p)])
    assert code == 0 and json.loads(out)["equilibria"]
    sc = load_scenario(path=p)
    assert sc.solver.scan_points == 720 and sc.vehicle.delta == pytest.approx(math.radians(20))


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"vehicle": {"mass": 1.0}}, "model"),
        ({"vehicle": {"mass": -1.0}, "model": {"preset": "sine-stall"}}, "vehicle"),
        ({"vehicle": {"mass": 1.0}, "model": {"preset": "sine-stall", "polar": "naca0021", "ka": 1}}, "model"),
        ({"vehicle": {"mass": 1.0}, "model": {"preset": "nope"}}, "model"),
        ({"vehicle": {"mass": 1.0, "delta_deg": 1, "delta_rad": 1}, "model": {"preset": "sine-stall"}}, "vehicle"),
        ({"vehicle": {"mass": 1.0}, "model": {"preset": "sine-stall"}, "solver": {"scan_points": 2}}, "solver"),
        ({"vehicle": {"mass": 1.0}, "model": {"preset": "sine-stall"}, "extra": 1}, "root"),
    ],
)
def test_invalid_scenarios(tmp_path, doc, fragment):
    p = tmp_path / "bad.yaml"
    p.write_text(yaml.safe_dump(doc))
    code, out, err = run(["find", "--config", str(p)])
    assert code == 1 and out == ""
    assert fragment in err


def test_error_paths(tmp_path):
    assert run(["find", "--config", str(tmp_path / "missing.yaml")])[0] == 1
    (tmp_path / "x.yaml").write_text("vehicle: [unclosed")
    assert run(["find", "--config", str(tmp_path / "x.yaml")])[0] == 1
    assert run(["find"])[0] == 1
    assert run(["find", "--preset", "hover", "--config", "x"])[0] == 1
    assert run(["find", "--preset", "hover", "--set", "nonsense"])[0] == 1
    assert run(["find", "--preset", "hover", "--set", "model.polar=missing.csv"])[0] == 1
    assert run(["find", "--preset", "lemma1", "--set", "model.params={c0: 0.1, c9: 2}"])[0] == 1
    assert run(["bogus"])[0] == 1
    with pytest.raises(ConfigError):
        load_scenario()


def test_preset_files_validate():
    schema = load_schema("scenario")
    for name in ("hover", "lemma1", "bisym-demo"):
        from flighttrim.config import preset_text

        jsonschema.validate(yaml.safe_load(preset_text(name)), schema)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "flighttrim.cli", "find", "--preset", "lemma1"], capture_output=True, text=True)
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["equilibria"] == []
