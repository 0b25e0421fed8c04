import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from wedge_entropy.charges import GaussianTerm, TimeZeroCharge, TruncationMode
from wedge_entropy.engine import (
    Route,
    boundary_decomposition,
    cross_term,
    density_integral,
    entropy_closed_form,
    mass_slope,
    momentum_entropy,
    relative_entropy_between,
    wedge_monotonicity_scan,
)
from wedge_entropy.momentum import MomentumGrid

DATA = Path(__file__).parent / "data" / "closed_form_reference.json"
D1 = MomentumGrid(1, 1.0, 48.0, 8192)


def single(which, c, a, s):
    return TimeZeroCharge.single(which, c, a, s)


def load_cases():
    cases = json.loads(DATA.read_text())["cases"]
    out = []
    for c in cases:
        def terms(items):
            return tuple(GaussianTerm(t["amplitude"], tuple(t["center"]), t["width"]) for t in items)

        charge = TimeZeroCharge(terms(c["field"]), terms(c["momentum"]), c["dimension"])
        out.append(pytest.param(charge, c["mass"], c["offset"], c["total"], id=c["name"]))
    return out


@pytest.mark.parametrize("charge,m,offset,expected", load_cases())
def test_closed_form_matches_independent_quadrature(charge, m, offset, expected):
    got = entropy_closed_form(charge, m, offset).total
    assert got == pytest.approx(expected, rel=1e-12)


def test_zero_charge():
    zero = TimeZeroCharge(dimension=1)
    r = entropy_closed_form(zero, 1.0)
    assert (r.total, r.field_term, r.momentum_total, r.boundary_term) == (0, 0, 0, 0)
    assert momentum_entropy(zero, D1).total == 0.0
    assert boundary_decomposition(zero, 1.0) == (0.0, 0.0)


def test_massless_line_rejected():
    with pytest.raises(ValueError):
        entropy_closed_form(single("field", 1, (0.0,), 1), 0.0)


def test_interior_field_anchor():
    h = single("field", 1.0, (2.0,), 1.0)
    r = entropy_closed_form(h, 1.0)
    # pi * int_0^inf x exp(-2 (x-2)^2) dx, the leading Gaussian moment being 2 pi sqrt(pi/2)
    direct = math.pi * quad(lambda x: x * math.exp(-2 * (x - 2) ** 2), 0, np.inf, epsabs=1e-14)[0]
    assert r.total == pytest.approx(direct, rel=1e-12)
    assert r.total == pytest.approx(2 * math.pi * math.sqrt(math.pi / 2), rel=1e-5)
    assert r.field_term == r.total
    # the field term does not depend on the mass
    assert entropy_closed_form(h, 0.3).total == r.total


def test_boundary_k_anchor_and_decomposition():
    k = single("momentum", 1.0, (0.0,), 1.0)
    r = entropy_closed_form(k, 1.0)
    assert r.total == pytest.approx(0.75 * math.pi, rel=1e-14)
    assert r.boundary_term == pytest.approx(math.pi, rel=1e-14)
    bulk, boundary = boundary_decomposition(k, 1.0)
    assert boundary == r.boundary_term
    direct_bulk = math.pi * quad(
        lambda x: x * math.exp(-(x**2)) * ((2 - 4 * x * x) * math.exp(-(x**2)) + math.exp(-(x**2))),
        0,
        np.inf,
    )[0]
    assert bulk == pytest.approx(direct_bulk, rel=1e-12)
    assert bulk == pytest.approx(math.pi / 4, rel=1e-14)
    # integration by parts leaves half the boundary integral
    assert bulk + 0.5 * boundary == pytest.approx(r.momentum_total, rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(st.floats(-2, 2), st.floats(-1.5, 3), st.floats(-1, 1), st.floats(0.4, 1.6)),
        min_size=1,
        max_size=3,
    ),
    st.floats(0.1, 2.0),
    st.floats(0.0, 1.0),
)
def test_boundary_identity_random_k(terms, m, offset):
    k = TimeZeroCharge(
        momentum_terms=tuple(GaussianTerm(c, (a1, a2), s) for c, a1, a2, s in terms), dimension=2
    )
    r = entropy_closed_form(k, m, offset)
    bulk, boundary = boundary_decomposition(k, m, offset)
    scale = max(abs(r.momentum_total), abs(bulk), boundary, 1e-300)
    assert abs(bulk + 0.5 * boundary - r.momentum_total) <= 1e-10 * scale


def test_boundary_decomposition_rejects_field():
    with pytest.raises(ValueError):
        boundary_decomposition(single("field", 1.0, (1.0,), 1.0), 1.0)


# amplitudes kept clear of the range where c^2 underflows
amplitudes = st.one_of(st.just(0.0), st.floats(1e-3, 2.0), st.floats(-2.0, -1e-3))
charges_1d = st.lists(
    st.tuples(st.sampled_from(["field", "momentum"]), amplitudes, st.floats(-3, 4), st.floats(0.3, 2)),
    min_size=1,
    max_size=4,
)


def build(terms, d=1):
    h = tuple(GaussianTerm(c, (a,) + (0.0,) * (d - 1), s) for w, c, a, s in terms if w == "field")
    k = tuple(GaussianTerm(c, (a,) + (0.0,) * (d - 1), s) for w, c, a, s in terms if w == "momentum")
    return TimeZeroCharge(h, k, d)


@settings(max_examples=80, deadline=None)
@given(charges_1d, st.floats(0.05, 3.0), st.floats(0.0, 2.0))
def test_positivity(terms, m, offset):
    ch = build(terms)
    r = entropy_closed_form(ch, m, offset)
    for v in (r.total, r.field_term, r.momentum_total, r.boundary_term):
        assert v >= -1e-12 * max(1.0, abs(r.total))
    if not ch.is_zero() and offset == 0.0 and any(a > -1 for _, c, a, _ in terms if c != 0):
        assert r.total > 0


@settings(max_examples=60, deadline=None)
@given(charges_1d, st.floats(0.05, 3.0), st.floats(-4, 4))
def test_quadratic_scaling_and_additivity(terms, m, lam):
    ch = build(terms)
    base = entropy_closed_form(ch, m).total
    scaled = entropy_closed_form(ch.scaled(lam), m).total
    assert scaled == pytest.approx(lam * lam * base, rel=1e-12, abs=1e-300)
    parts = entropy_closed_form(ch.field_part(), m).total + entropy_closed_form(ch.momentum_part(), m).total
    assert abs(base - parts) <= 1e-10 * max(1.0, base)


def test_relative_entropy_between():
    h2 = single("field", 1.0, (2.0,), 1.0)
    h3 = single("field", 1.0, (3.0,), 1.0)
    assert relative_entropy_between(h2, h2, 1.0) == 0.0
    vac = TimeZeroCharge(dimension=1)
    assert relative_entropy_between(vac, h2, 1.0) == entropy_closed_form(h2, 1.0).total
    diff = relative_entropy_between(h2, h3, 1.0)
    assert diff == pytest.approx(entropy_closed_form(h3 - h2, 1.0).total, rel=1e-15)
    mom = momentum_entropy(h3 - h2, D1).total
    assert abs(mom - diff) < 0.01 * diff


def test_wedge_scan_examples():
    h = single("field", 1.0, (3.0,), 0.5)
    assert len(wedge_monotonicity_scan(h, 1.0, [0.0])) == 1
    scan = wedge_monotonicity_scan(h, 1.0, [0.0, 1.0, 2.0])
    base = scan[0][1]
    slope = density_integral(h, 1.0)
    h2 = math.pi * 0.5 * math.sqrt(math.pi / 2)  # pi * int h^2
    assert slope == pytest.approx(h2, rel=1e-14)
    for a, total in scan:
        assert abs(total - (base - a * slope)) <= 1e-6 * base
    k = single("momentum", 1.0, (0.0,), 1.0)
    totals = [t for _, t in wedge_monotonicity_scan(k, 1.0, [0.0, 0.5, 1.0])]
    assert totals[0] > totals[1] > totals[2] > 0


def test_wedge_scan_rejects_bad_offsets():
    k = single("momentum", 1.0, (0.0,), 1.0)
    with pytest.raises(ValueError):
        wedge_monotonicity_scan(k, 1.0, [1.0, 0.5])
    with pytest.raises(ValueError):
        wedge_monotonicity_scan(k, 1.0, [-1.0, 0.5])


@settings(max_examples=30, deadline=None)
@given(charges_1d, st.floats(0.1, 2.0))
def test_monotone_in_offset(terms, m):
    ch = build(terms)
    totals = [t for _, t in wedge_monotonicity_scan(ch, m, np.linspace(0, 3, 7))]
    assert all(b <= a + 1e-10 for a, b in zip(totals, totals[1:]))


def test_mass_dependence_is_affine_in_m_squared():
    k = TimeZeroCharge(momentum_terms=(GaussianTerm(1.0, (0.5, 0.0), 1.0),), dimension=2)
    totals = [entropy_closed_form(k, m).total for m in (0.0, 0.5, 1.0)]
    slope = mass_slope(k)
    direct = math.pi * quad(lambda x: x * math.exp(-2 * (x - 0.5) ** 2), 0, np.inf)[0] * math.sqrt(math.pi / 2)
    assert slope == pytest.approx(direct, rel=1e-12)
    assert totals[1] - totals[0] == pytest.approx(0.25 * slope, rel=1e-12)
    assert totals[2] - totals[0] == pytest.approx(slope, rel=1e-12)


def test_center_sweep_is_increasing_for_k():
    k = single("momentum", 1.0, (0.0,), 1.0)
    totals = [entropy_closed_form(k.shifted(a), 1.0).total for a in np.linspace(-2, 4, 13)]
    assert all(b > a for a, b in zip(totals, totals[1:]))


# -- momentum route ---------------------------------------------------------


def test_momentum_route_small_grid_interior_h():
    h = single("field", 1.0, (2.0,), 1.0)
    g = MomentumGrid(1, 1.0, 16.0, 2048)
    r = momentum_entropy(h, g)
    exact = entropy_closed_form(h, 1.0).total
    assert r.route is Route.MOMENTUM
    assert abs(r.total - exact) < 0.005 * exact
    assert r.momentum_bulk is None and r.boundary_term is None


def test_momentum_route_boundary_k_improves():
    k = single("momentum", 1.0, (0.0,), 1.0)
    errs = []
    for g in (D1, D1.scaled(2.0)):
        r = momentum_entropy(k, g, mode=TruncationMode.WEDGE_HALF_SPACE)
        errs.append(abs(r.total - 0.75 * math.pi))
        assert errs[-1] <= r.error_estimate
    assert errs[0] < 0.02 * 0.75 * math.pi
    assert errs[1] < errs[0]


@pytest.mark.parametrize("charge,m,offset,expected", load_cases())
def test_momentum_route_within_error_estimate(charge, m, offset, expected):
    half_extent, points = (48.0, 8192) if charge.dimension == 1 else (24.0, 512)
    g = MomentumGrid(charge.dimension, m, half_extent, points)
    r = momentum_entropy(charge, g, offset)
    assert abs(r.total - expected) <= r.error_estimate
    assert abs(r.total - expected) < 0.01 * expected


def test_offset_is_translation():
    k = single("momentum", 0.7, (0.5,), 1.2)
    a = momentum_entropy(k, D1, wedge_offset=0.3).total
    b = momentum_entropy(k.shifted(-0.3), D1).total
    assert a == b


def test_cross_term_examples():
    h = single("field", 1.0, (2.0,), 1.0)
    k = single("momentum", 1.0, (2.0,), 1.0)
    assert cross_term(h, D1) == 0.0
    assert cross_term(k, D1) == 0.0
    total = entropy_closed_form(h + k, 1.0).total
    assert abs(cross_term(h + k, D1)) < 1e-6 * total
    h0 = single("field", 1.0, (0.0,), 1.0)
    k0 = single("momentum", 1.0, (0.0,), 1.0)
    total0 = entropy_closed_form(h0 + k0, 1.0).total
    assert abs(cross_term(h0 + k0, D1)) < 1e-3 * total0
    r = momentum_entropy(h0 + k0, D1)
    assert abs(r.metadata["cross_term"]) < 1e-3 * total0


def test_momentum_additivity():
    h = single("field", 0.8, (0.5,), 0.9)
    k = single("momentum", 1.1, (0.4,), 1.0)
    whole = momentum_entropy(h + k, D1)
    assert whole.total == pytest.approx(
        momentum_entropy(h, D1).total + momentum_entropy(k, D1).total, rel=1e-10
    )


def test_report_as_dict():
    r = entropy_closed_form(single("momentum", 1.0, (0.0,), 1.0), 1.0)
    d = r.as_dict()
    assert d["route"] == "closed_form"
    assert set(d) >= {"field_term", "momentum_bulk", "boundary_term", "total", "error_estimate"}
