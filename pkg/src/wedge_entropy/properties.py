"""Property checks run by ``wedge-entropy validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import engine, modular
from .charges import TimeZeroCharge
from .momentum import MomentumGrid


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: residual={self.residual:.3e} tol={self.tolerance:.1e}"
        return f"{text} ({self.detail})" if self.detail else text


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def check_positivity(charge: TimeZeroCharge, m: float, offsets) -> PropertyResult:
    totals = [engine.entropy_closed_form(charge, m, a).total for a in offsets]
    worst = min(totals)
    nonzero = not charge.is_zero()
    passed = worst >= -1e-10 and (not nonzero or totals[0] > 0)
    return PropertyResult("positivity", passed, max(0.0, -worst), 1e-10, f"min total {worst:.6g}")


def check_boundary_identity(charge: TimeZeroCharge, m: float, offset: float = 0.0) -> PropertyResult:
    k = charge.momentum_part()
    report = engine.entropy_closed_form(k, m, offset)
    bulk, boundary = engine.boundary_decomposition(k, m, offset)
    residual = _rel(bulk + 0.5 * boundary, report.momentum_total)
    return PropertyResult("boundary_identity", residual <= 1e-8, residual, 1e-8)


def check_additivity(charge: TimeZeroCharge, m: float) -> PropertyResult:
    total = engine.entropy_closed_form(charge, m).total
    parts = (
        engine.entropy_closed_form(charge.field_part(), m).total
        + engine.entropy_closed_form(charge.momentum_part(), m).total
    )
    residual = abs(total - parts)
    return PropertyResult("additivity", residual <= 1e-10, residual, 1e-10)


def check_cross_term(charge: TimeZeroCharge, grid: MomentumGrid, tol: float = 1e-3) -> PropertyResult:
    total = engine.entropy_closed_form(charge, grid.mass).total
    cross = engine.cross_term(charge, grid)
    residual = abs(cross) / total if total > 0 else abs(cross)
    return PropertyResult("cross_term", residual < tol, residual, tol)


def check_scaling(charge: TimeZeroCharge, m: float, factor: float = 1.7) -> PropertyResult:
    base = engine.entropy_closed_form(charge, m).total
    scaled = engine.entropy_closed_form(charge.scaled(factor), m).total
    residual = _rel(scaled, factor * factor * base)
    return PropertyResult("quadratic_scaling", residual < 1e-12, residual, 1e-12)


def check_wedge_monotonicity(charge: TimeZeroCharge, m: float, offsets) -> PropertyResult:
    scan = engine.wedge_monotonicity_scan(charge, m, offsets)
    totals = [t for _, t in scan]
    rises = [b - a for a, b in zip(totals, totals[1:])]
    residual = max([0.0] + rises)
    return PropertyResult("wedge_monotonicity", residual <= 1e-10, residual, 1e-10)


def check_wedge_shift(charge: TimeZeroCharge, m: float, offsets) -> PropertyResult | None:
    """Linear shift identity, only meaningful for charges deep inside every wedge."""
    offsets = list(offsets)
    if charge.is_zero() or charge.min_boundary_distance(max(offsets)) < 6.0:
        return None
    base = engine.entropy_closed_form(charge, m, 0.0).total
    slope = engine.density_integral(charge, m)
    residual = 0.0
    for a in offsets:
        value = engine.entropy_closed_form(charge, m, a).total
        residual = max(residual, abs(value - (base - a * slope)) / base)
    return PropertyResult("wedge_shift", residual <= 1e-6, residual, 1e-6)


def check_mass_slope(charge: TimeZeroCharge, m: float) -> PropertyResult | None:
    if charge.momentum_part().is_zero():
        return None
    m2 = max(m * m, 0.25)
    step = 0.1
    lo = engine.entropy_closed_form(charge, math.sqrt(m2 - step)).total
    hi = engine.entropy_closed_form(charge, math.sqrt(m2 + step)).total
    fd = (hi - lo) / (2.0 * step)
    expected = engine.mass_slope(charge)
    residual = _rel(fd, expected)
    return PropertyResult("mass_slope", residual < 1e-8 and expected > 0, residual, 1e-8)


def check_route_equivalence(charge: TimeZeroCharge, grid: MomentumGrid, tol: float) -> PropertyResult:
    closed = engine.entropy_closed_form(charge, grid.mass).total
    mom = engine.momentum_entropy(charge, grid).total
    residual = _rel(mom, closed)
    return PropertyResult("route_equivalence", residual <= tol, residual, tol)


def check_refinement_ladder(charge: TimeZeroCharge, grid: MomentumGrid, ladder) -> PropertyResult:
    estimates = []
    for scale in ladder:
        g = grid if scale == 1.0 else grid.scaled(scale)
        estimates.append(engine.momentum_entropy(charge, g).error_estimate)
    rises = [b - a for a, b in zip(estimates, estimates[1:])]
    residual = max([0.0] + rises)
    detail = ", ".join(f"{e:.3g}" for e in estimates)
    return PropertyResult("refinement_ladder", residual <= 0.0, residual, 0.0, f"estimates {detail}")


def check_tomita_relations(seed: int, count: int = 50, nmax: int = 4) -> PropertyResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(1, nmax + 1))
        K = modular.random_standard_subspace(n, rng)
        worst = max(worst, max(modular.tomita_residuals(K).values()))
    return PropertyResult("tomita_relations", worst < 1e-8, worst, 1e-8, f"{count} subspaces, seed {seed}")


def run_suite(
    charge: TimeZeroCharge,
    m: float,
    grid: MomentumGrid,
    offsets,
    ladder,
    tolerance: float,
    seed: int,
) -> list[PropertyResult]:
    offsets = list(offsets) or [0.0]
    results = [
        check_positivity(charge, m, offsets),
        check_boundary_identity(charge, m),
        check_additivity(charge, m),
        check_scaling(charge, m),
        check_wedge_monotonicity(charge, m, offsets),
    ]
    optional = [check_wedge_shift(charge, m, offsets), check_mass_slope(charge, m)]
    results.extend(r for r in optional if r is not None)
    if not charge.is_zero():
        results.append(check_cross_term(charge, grid))
        results.append(check_route_equivalence(charge, grid, tolerance))
        if len(ladder) > 1:
            results.append(check_refinement_ladder(charge, grid, ladder))
    results.append(check_tomita_relations(seed))
    return results
