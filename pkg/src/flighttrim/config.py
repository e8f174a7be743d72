"""Scenario files: one YAML (or JSON) document describing vehicle, model, condition and solver.

Example::

    vehicle: {mass: 1.5, gravity: 9.81, delta_rad: 0.4}
    model: {preset: bisym-flat-plate, params: {c0: 0.05, c1: 1.2, c2: 1.0}, ka: 0.37}
    condition: {v_ref: [0, 12], a_ref: [0, 0], v_wind: [0, 0]}
    solver: {scan_points: 3600}

A tabulated model replaces ``preset``/``params`` with ``polar`` (a bundled
name such as ``naca0021`` or a CSV path, relative paths resolved against the
scenario file), ``ka``, ``symmetry`` and ``extension``.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema
import yaml

from .aero import PRESETS, AeroModel
from .equilibria import SolverConfig
from .errors import ConfigError
from .forces import FlightCondition, VehicleParams
from .polar_io import BUNDLED, build_model, extend_bisymmetric, extend_symmetric, load_bundled, read_polar

PRESET_NAMES = ("hover", "lemma1", "bisym-demo")


def load_schema(name: str) -> dict:
    """A JSON schema shipped with the package: ``scenario``, ``find`` or ``check``."""
    text = resources.files("flighttrim").joinpath("schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class ScenarioConfig:
    vehicle: VehicleParams
    model: AeroModel
    condition: FlightCondition
    solver: SolverConfig
    raw: dict

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> "ScenarioConfig":
        try:
            jsonschema.validate(data, load_schema("scenario"))
        except jsonschema.ValidationError as exc:
            where = "/".join(map(str, exc.absolute_path)) or "<root>"
            raise ConfigError(f"invalid scenario at {where}: {exc.message}") from None
        v = data["vehicle"]
        delta = math.radians(v["delta_deg"]) if "delta_deg" in v else v.get("delta_rad", 0.0)
        try:
            vehicle = VehicleParams(mass=float(v["mass"]), gravity=float(v.get("gravity", 9.81)), delta=float(delta))
            condition = FlightCondition(**data.get("condition", {}))
            solver = SolverConfig.from_dict(data.get("solver", {}))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        model = _build_model(data["model"], base_dir)
        return cls(vehicle, model, condition, solver, copy.deepcopy(data))


def _build_model(m: dict, base_dir: Path | None) -> AeroModel:
    if "preset" in m:
        params = dict(m.get("params", {}))
        try:
            return PRESETS[m["preset"]](ka=float(m.get("ka", 1.0)), **params)
        except TypeError as exc:
            raise ConfigError(f"bad parameters for preset {m['preset']!r}: {exc}") from None
    src = m["polar"]
    if src.lower() in BUNDLED:
        table = load_bundled(src)
    else:
        path = Path(src)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        if not path.is_file():
            raise ConfigError(f"polar file not found: {path}")
        table = read_polar(path)
    ext = m.get("extension", "none")
    if ext == "symmetric":
        table = extend_symmetric(table)
    elif ext == "bisymmetric":
        table = extend_bisymmetric(table)
    return build_model(table, float(m["ka"]), m.get("symmetry", "generic"), rho=m.get("rho"), sigma=m.get("sigma"))


def parse_override(text: str) -> tuple[list[str], object]:
    """``section.key=value`` with a YAML-parsed value, e.g. ``condition.v_ref=[0, 5]``."""
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"override must look like section.key=value, got {text!r}")
    return key.strip().split("."), yaml.safe_load(value)


def apply_overrides(data: dict, overrides) -> dict:
    data = copy.deepcopy(data)
    for path, value in overrides:
        node = data
        for part in path[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"cannot override inside non-mapping {'.'.join(path)}")
        if path[-1] in ("delta_deg", "delta_rad") and path[:-1] == ["vehicle"]:
            node.pop("delta_deg", None)
            node.pop("delta_rad", None)
        if path[:-1] == ["model"] and path[-1] in ("preset", "polar"):
            for k in ("preset", "params", "polar", "symmetry", "extension"):
                node.pop(k, None)
        node[path[-1]] = value
    return data


def parse_document(text: str) -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"not valid YAML/JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("a scenario must be a mapping")
    return data


def preset_text(name: str) -> str:
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    return resources.files("flighttrim").joinpath("presets").joinpath(f"{name}.yaml").read_text()


def load_scenario(path=None, text: str | None = None, preset: str | None = None, overrides=()) -> ScenarioConfig:
    """Read a scenario from a file, literal text or a shipped preset, then apply overrides."""
    base_dir = None
    if preset is not None:
        text = preset_text(preset)
    elif path is not None:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {p}: {exc.strerror}") from None
        base_dir = p.resolve().parent
    if text is None:
        raise ConfigError("no scenario given")
    data = apply_overrides(parse_document(text), [parse_override(o) if isinstance(o, str) else o for o in overrides])
    return ScenarioConfig.from_dict(data, base_dir)
