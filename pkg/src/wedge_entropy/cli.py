"""Command line front end: entropy, validate, oracle, sweep."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import engine, fock, modular, properties
from .charges import TimeZeroCharge
from .config import ConfigError, ScenarioConfig, load_config

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_DISAGREE = 3

CSV_COLUMNS = [
    "offset",
    "route",
    "field_term",
    "momentum_bulk",
    "boundary_term",
    "total",
    "error_estimate",
]
SWEEP_COLUMNS = ["parameter", "value"] + CSV_COLUMNS[1:]


def _json_number(value):
    if value is None:
        return None
    if isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, float)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.12g}")
    return value


def _rounded(obj):
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    try:
        import numpy as np

        if isinstance(obj, np.generic):
            obj = obj.item()
    except ImportError:  # pragma: no cover
        pass
    return _json_number(obj)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{float(value):.9g}"


def _write_csv(path: Path, columns, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    path.write_text(buf.getvalue(), encoding="utf-8")


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(_rounded(payload), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _reports(cfg: ScenarioConfig, charge: TimeZeroCharge, mass: float, offset: float):
    out = []
    for route in cfg.routes:
        if route == "closed_form":
            out.append(engine.entropy_closed_form(charge, mass, offset))
        else:
            out.append(engine.momentum_entropy(charge, cfg.grid(mass=mass), offset))
    return out


def _disagreement(reports, tolerance: float) -> float | None:
    by_route = {r.route: r.total for r in reports}
    if len(by_route) < 2:
        return None
    closed = by_route[engine.Route.CLOSED_FORM]
    mom = by_route[engine.Route.MOMENTUM]
    scale = max(abs(closed), abs(mom))
    if scale < 1e-12:
        return 0.0
    return abs(closed - mom) / scale


def _row(report: engine.EntropyReport, **extra) -> dict:
    row = dict(extra)
    row.update(
        route=report.route.value,
        field_term=report.field_term,
        momentum_bulk=report.momentum_bulk,
        boundary_term=report.boundary_term,
        total=report.total,
        error_estimate=report.error_estimate,
    )
    return row


def cmd_entropy(cfg: ScenarioConfig, out_dir: Path) -> int:
    rows = []
    entries = []
    worst = 0.0
    for offset in cfg.wedge_offsets:
        reports = _reports(cfg, cfg.charge, cfg.mass, offset)
        gap = _disagreement(reports, cfg.tolerance)
        if gap is not None:
            worst = max(worst, gap)
        for r in reports:
            rows.append(_row(r, offset=offset))
            entries.append({"offset": offset, **r.as_dict()})
            print(f"offset={offset:g} route={r.route.value} total={r.total:.10g} error={r.error_estimate:.3g}")
    payload = {
        "schema": 1,
        "scenario": cfg.name,
        "dimension": cfg.dimension,
        "mass": cfg.mass,
        "reports": entries,
        "route_discrepancy": worst,
        "tolerance": cfg.tolerance,
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(out_dir / cfg.json_output, payload)
    _write_csv(out_dir / cfg.csv_output, CSV_COLUMNS, rows)
    if worst > cfg.tolerance:
        print(
            f"route disagreement {worst:.3e} exceeds tolerance {cfg.tolerance:.1e}",
            file=sys.stderr,
        )
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_validate(cfg: ScenarioConfig, seed: int) -> int:
    results = properties.run_suite(
        cfg.charge,
        cfg.mass,
        cfg.grid(),
        cfg.wedge_offsets,
        cfg.refinement,
        cfg.tolerance,
        seed,
    )
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} properties failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_oracle(lam: float, z: complex, cutoff: int) -> int:
    K = modular.subspace_from_modular_data([lam])
    h = modular.squeezed_vector(lam, z)
    linear = modular.vector_entropy(K, h)
    araki = fock.coherent_araki_entropy(lam, z, cutoff)
    closed = fock.closed_form_entropy(lam, z)
    residuals = {
        "vector_vs_araki": abs(linear - araki),
        "vector_vs_closed": abs(linear - closed),
        "araki_vs_closed": abs(araki - closed),
    }
    print(f"lambda={lam:g} z={z} cutoff={cutoff}")
    print(f"vector_entropy    {linear:.12g}")
    print(f"araki_truncated   {araki:.12g}")
    print(f"closed_form       {closed:.12g}")
    for name, value in residuals.items():
        print(f"residual {name:18s} {value:.3e}")
    return EXIT_OK if max(residuals.values()) < 1e-3 else EXIT_FAILED


def cmd_sweep(cfg: ScenarioConfig, out_dir: Path) -> int:
    rows = []
    param = cfg.sweep_parameter or "center"
    offset = cfg.wedge_offsets[0] if cfg.wedge_offsets else 0.0
    anchor = None
    terms = cfg.charge.field_terms + cfg.charge.momentum_terms
    if terms:
        anchor = terms[0].center[0]
    for value in cfg.sweep_values:
        charge, mass = cfg.charge, cfg.mass
        if param == "center":
            charge = cfg.charge.shifted(value - anchor)
        else:
            mass = value
        for r in _reports(cfg, charge, mass, offset):
            rows.append(_row(r, parameter=param, value=value))
            print(f"{param}={value:g} route={r.route.value} total={r.total:.10g}")
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(out_dir / cfg.csv_output, SWEEP_COLUMNS, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wedge-entropy",
        description="Relative entropy of coherent states of a free scalar field on a Rindler wedge.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario(p):
        p.add_argument("--config", required=True, help="scenario JSON (path or bundled name)")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument(
            "--grid-scale",
            type=float,
            default=1.0,
            help="multiply the momentum cutoff by s and the node count by s^2",
        )

    scenario(sub.add_parser("entropy", help="compute entropy reports"))
    p_val = sub.add_parser("validate", help="run the property suite")
    scenario(p_val)
    p_val.add_argument("--seed", type=int, default=0, help="seed for random standard subspaces")
    scenario(sub.add_parser("sweep", help="entropy versus center or mass"))

    p_or = sub.add_parser("oracle", help="finite-dimensional modular oracle")
    p_or.add_argument("--lambda", "--lam", dest="lam", type=float, required=True)
    p_or.add_argument("--z", type=complex, default=1 + 0j, help="complex amplitude, e.g. 1 or 2j")
    p_or.add_argument("--cutoff", type=int, default=fock.DEFAULT_CUTOFF)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "oracle":
            if not (0.0 < args.lam < 1.0):
                raise ConfigError("--lambda must lie in (0, 1)")
            if args.cutoff < 2:
                raise ConfigError("--cutoff must be >= 2")
            return cmd_oracle(args.lam, args.z, args.cutoff)
        if not args.grid_scale > 0:
            raise ConfigError("--grid-scale must be positive")
        cfg = load_config(args.config)
        if args.grid_scale != 1.0:
            cfg = cfg.with_grid_scale(args.grid_scale)
        if args.command == "entropy":
            return cmd_entropy(cfg, args.out)
        if args.command == "validate":
            return cmd_validate(cfg, args.seed)
        return cmd_sweep(cfg, args.out)
    except (ConfigError, fock.TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
