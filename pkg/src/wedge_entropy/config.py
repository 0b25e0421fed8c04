"""Scenario configuration files (JSON, schema version 1)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import jsonschema

from .charges import GaussianTerm, TimeZeroCharge
from .momentum import MomentumGrid

SCHEMA_VERSION = 1

_TERM = {
    "type": "object",
    "additionalProperties": False,
    "required": ["amplitude", "center", "width"],
    "properties": {
        "amplitude": {"type": "number"},
        "center": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "width": {"type": "number", "exclusiveMinimum": 0},
    },
}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["schema", "dimension", "mass", "charge"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "dimension": {"type": "integer", "minimum": 1},
        "mass": {"type": "number", "minimum": 0},
        "charge": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "field": {"type": "array", "items": _TERM},
                "momentum": {"type": "array", "items": _TERM},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "half_extent": {"type": "number", "exclusiveMinimum": 0},
                "points_per_axis": {"type": "integer", "minimum": 8},
                "refinement": {
                    "type": "array",
                    "items": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
        "wedge_offsets": {"type": "array", "items": {"type": "number", "minimum": 0}},
        "routes": {
            "type": "array",
            "items": {"enum": ["closed_form", "momentum"]},
            "minItems": 1,
            "uniqueItems": True,
        },
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["parameter", "values"],
            "properties": {
                "parameter": {"enum": ["center", "mass"]},
                "values": {"type": "array", "items": {"type": "number"}},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "json": {"type": "string"},
                "csv": {"type": "string"},
            },
        },
    },
}

DEFAULT_GRID = {1: (48.0, 8192), 2: (24.0, 512), 3: (12.0, 96)}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    dimension: int
    mass: float
    charge: TimeZeroCharge
    half_extent: float
    points_per_axis: int
    refinement: tuple[float, ...] = (1.0, 2.0)
    wedge_offsets: tuple[float, ...] = (0.0,)
    routes: tuple[str, ...] = ("closed_form", "momentum")
    tolerance: float = 0.01
    sweep_parameter: str | None = None
    sweep_values: tuple[float, ...] = ()
    json_output: str = "report.json"
    csv_output: str = "entropy.csv"
    raw: dict = field(default_factory=dict, repr=False, compare=False)

    def grid(self, scale: float = 1.0, mass: float | None = None) -> MomentumGrid:
        base = MomentumGrid(
            self.dimension,
            self.mass if mass is None else mass,
            self.half_extent,
            self.points_per_axis,
        )
        return base if scale == 1.0 else base.scaled(scale)

    def with_grid_scale(self, scale: float) -> "ScenarioConfig":
        g = self.grid(scale)
        return replace(self, half_extent=g.half_extent, points_per_axis=g.points_per_axis)


def _terms(items, dimension: int, label: str) -> tuple[GaussianTerm, ...]:
    terms = []
    for i, item in enumerate(items):
        if len(item["center"]) != dimension:
            raise ConfigError(
                f"charge.{label}[{i}].center has {len(item['center'])} components, expected {dimension}"
            )
        terms.append(GaussianTerm(item["amplitude"], tuple(item["center"]), item["width"]))
    return tuple(terms)


def parse_config(payload: dict, name: str = "scenario") -> ScenarioConfig:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(payload), key=lambda e: list(e.path))
    if errors:
        lines = []
        for err in errors:
            where = "/".join(str(p) for p in err.path) or "<root>"
            lines.append(f"{where}: {err.message}")
        raise ConfigError("invalid config:\n  " + "\n  ".join(lines))

    d = payload["dimension"]
    m = float(payload["mass"])
    if d == 1 and m == 0:
        raise ConfigError("mass 0 in one space dimension is not supported")
    charge_spec = payload["charge"]
    charge = TimeZeroCharge(
        _terms(charge_spec.get("field", []), d, "field"),
        _terms(charge_spec.get("momentum", []), d, "momentum"),
        d,
    )
    default_p, default_n = DEFAULT_GRID.get(d, (12.0, 64))
    grid = payload.get("grid", {})
    offsets = tuple(float(v) for v in payload.get("wedge_offsets", [0.0]))
    if any(b < a for a, b in zip(offsets, offsets[1:])):
        raise ConfigError("wedge_offsets must be sorted ascending")
    sweep = payload.get("sweep")
    if sweep and sweep["parameter"] == "mass":
        if any(v < 0 for v in sweep["values"]):
            raise ConfigError("sweep over mass requires non-negative values")
        if d == 1 and any(v == 0 for v in sweep["values"]):
            raise ConfigError("mass 0 in one space dimension is not supported")
    if sweep and sweep["parameter"] == "center" and charge.is_zero():
        raise ConfigError("a center sweep needs a nonzero charge")
    output = payload.get("output", {})
    cfg = ScenarioConfig(
        name=payload.get("name", name),
        dimension=d,
        mass=m,
        charge=charge,
        half_extent=float(grid.get("half_extent", default_p)),
        points_per_axis=int(grid.get("points_per_axis", default_n)),
        refinement=tuple(float(v) for v in grid.get("refinement", [1.0, 2.0])),
        wedge_offsets=offsets,
        routes=tuple(payload.get("routes", ["closed_form", "momentum"])),
        tolerance=float(payload.get("tolerance", 0.01)),
        sweep_parameter=sweep["parameter"] if sweep else None,
        sweep_values=tuple(float(v) for v in sweep["values"]) if sweep else (),
        json_output=output.get("json", "report.json"),
        csv_output=output.get("csv", "entropy.csv"),
        raw=payload,
    )
    try:
        cfg.grid()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def bundled_scenarios() -> list[str]:
    root = resources.files("wedge_entropy") / "scenarios"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_config(path: str | Path) -> ScenarioConfig:
    """Read a config file; bare names fall back to the bundled scenarios."""
    path = Path(path)
    if path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        bundled = resources.files("wedge_entropy") / "scenarios" / path.name
        if not bundled.is_file():
            raise ConfigError(f"config file not found: {path}")
        text = bundled.read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return parse_config(payload, name=path.stem)
