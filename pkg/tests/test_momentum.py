import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wedge_entropy.charges import GaussianTerm, TimeZeroCharge, TruncationMode, to_onshell
from wedge_entropy.momentum import (
    GridMismatchError,
    MomentumGrid,
    OnShellData,
    boost_derivative,
    d_dp1,
    inner_product,
    omega,
    symplectic_form,
)


def gaussian(which, center=(0.0,), width=1.0, amplitude=1.0):
    return TimeZeroCharge.single(which, amplitude, center, width)


@pytest.mark.parametrize(
    "p,m,expected",
    [((0.0,), 1.0, 1.0), ((3.0, 4.0), 0.0, 5.0), ((1.0,), 1.0, math.sqrt(2.0))],
)
def test_omega_examples(p, m, expected):
    assert float(omega(np.array(p), m)) == pytest.approx(expected, rel=1e-15)


def test_grid_geometry():
    g = MomentumGrid(2, 0.0, 6.0, 16)
    assert g.spacing == pytest.approx(0.75)
    assert g.shape == (16, 16)
    assert g.size == 256
    assert g.cell_volume == pytest.approx(0.75**2)
    assert np.all(g.axis != 0.0)
    np.testing.assert_allclose(g.axis, -g.axis[::-1])
    assert np.all(g.energies() > 0)


def test_grid_rejects_bad_input():
    with pytest.raises(ValueError):
        MomentumGrid(1, 0.0, 10.0, 64)
    with pytest.raises(ValueError):
        MomentumGrid(1, 1.0, 10.0, 4)
    with pytest.raises(ValueError):
        MomentumGrid(1, -1.0, 10.0, 64)
    with pytest.raises(ValueError):
        MomentumGrid(1, 1.0, 0.0, 64)


def test_grid_scaling_refines_spacing():
    g = MomentumGrid(1, 1.0, 48.0, 8192)
    s = g.scaled(2.0)
    assert s.half_extent == pytest.approx(96.0)
    assert s.points_per_axis == 32768
    assert s.spacing == pytest.approx(g.spacing / 2)


def test_data_length_checked():
    g = MomentumGrid(1, 1.0, 4.0, 16)
    with pytest.raises(ValueError):
        OnShellData(g, np.zeros(15))


def test_grid_mismatch_is_an_error():
    a = OnShellData(MomentumGrid(1, 1.0, 4.0, 16), np.ones(16))
    b = OnShellData(MomentumGrid(1, 1.0, 4.0, 32), np.ones(32))
    with pytest.raises(GridMismatchError):
        inner_product(a, b)
    with pytest.raises(GridMismatchError):
        symplectic_form(a, b)


def random_data(seed, grid):
    rng = np.random.default_rng(seed)
    return OnShellData(grid, rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_inner_product_symmetries(s1, s2):
    g = MomentumGrid(2, 0.5, 3.0, 8)
    F, G = random_data(s1, g), random_data(s2, g)
    assert inner_product(G, F) == inner_product(F, G).conjugate()
    assert symplectic_form(F, G) == -symplectic_form(G, F)
    assert symplectic_form(F, F) == 0.0
    assert inner_product(F, F).real > 0


def test_zero_inner_product():
    g = MomentumGrid(1, 1.0, 4.0, 16)
    z = OnShellData(g, np.zeros(16))
    assert inner_product(z, z) == 0


def test_field_norm_converges():
    # ||h_phi||^2 = int |h^|^2 / (2 omega) dp
    h = gaussian("field")
    values = []
    for n in (512, 2048):
        g = MomentumGrid(1, 1.0, 12.0, n)
        F = to_onshell(h, g)
        values.append(inner_product(F, F))
    assert abs(values[0].imag) < 1e-15
    assert values[0].real == pytest.approx(values[1].real, rel=1e-6)


def test_field_field_symplectic_form_vanishes():
    g = MomentumGrid(1, 1.0, 16.0, 1024)
    F1 = to_onshell(gaussian("field", (0.3,), 0.8), g)
    F2 = to_onshell(gaussian("field", (-1.0,), 1.3, 2.0), g)
    assert abs(symplectic_form(F1, F2)) < 1e-8 * F1.norm() * F2.norm()


def test_field_momentum_pairing_is_half_overlap():
    g = MomentumGrid(1, 1.0, 16.0, 1024)
    F = to_onshell(gaussian("field"), g)
    G = to_onshell(gaussian("momentum"), g)
    expected = 0.5 * math.sqrt(math.pi / 2)
    assert symplectic_form(F, G) == pytest.approx(expected, rel=1e-6)
    ip = inner_product(F, G)
    assert abs(ip.real) < 1e-12
    assert ip.imag == pytest.approx(expected, rel=1e-6)


def test_field_momentum_pairing_d2():
    g = MomentumGrid(2, 0.7, 12.0, 192)
    h = TimeZeroCharge.single("field", 1.0, (0.4, -0.2), 0.9)
    k = TimeZeroCharge.single("momentum", 1.0, (0.0, 0.3), 1.1)
    F, G = to_onshell(h, g), to_onshell(k, g)
    # 1/2 int h k dx for two Gaussians
    s1, s2 = 0.9**2, 1.1**2
    dist2 = 0.4**2 + 0.5**2
    overlap = (math.pi * s1 * s2 / (s1 + s2)) * math.exp(-dist2 / (s1 + s2))
    assert symplectic_form(F, G) == pytest.approx(0.5 * overlap, rel=1e-6)


def test_derivative_of_constant_and_linear():
    g = MomentumGrid(1, 1.0, 4.0, 32)
    const = OnShellData(g, np.full(g.size, 2.5 + 1j))
    assert np.max(np.abs(boost_derivative(const).samples)) < 1e-12
    lin = OnShellData(g, g.axis.astype(complex))
    np.testing.assert_allclose(boost_derivative(lin).samples.real, g.energies(), rtol=1e-12)


def test_one_sided_edges_are_second_order():
    x = np.linspace(-1, 1, 41)
    spacing = x[1] - x[0]
    f = x**2
    np.testing.assert_allclose(d_dp1(f, spacing), 2 * x, atol=1e-12)


def test_boost_of_momentum_data_matches_onshell_expansion():
    # omega d/dp1 (i omega k^) = i (p1 k^ + omega^2 d/dp1 k^)
    g = MomentumGrid(1, 1.0, 10.0, 4096)
    k = gaussian("momentum", (0.7,), 1.2)
    G = to_onshell(k, g)
    p = g.axis
    s, a = 1.2, 0.7
    khat = (s / math.sqrt(2)) * np.exp(-(s**2) * p**2 / 4 + 1j * p * a)
    dkhat = (-(s**2) * p / 2 + 1j * a) * khat
    expected = 1j * (p * khat + g.energies() ** 2 * dkhat)
    got = boost_derivative(G).samples
    interior = slice(1, -1)
    assert np.max(np.abs(got[interior] - expected[interior])) < 1e-4 * np.max(np.abs(expected))


@pytest.mark.parametrize("m", [0.5, 1.0])
def test_tangential_matches_ambient_boost(m):
    # Ambient function Phi(p0, p) = f(p) + i p0 g(p); the generator
    # p0 d/dp1 + p1 d/dp0 restricted to the shell equals omega d/dp1 of the restriction.
    g = MomentumGrid(2, m, 8.0, 256)
    p1, p2 = np.meshgrid(g.axis, g.axis, indexing="ij")
    w = g.energies()
    f = np.exp(-(p1**2 + p2**2) / 3 + 0.4j * p1)
    gg = np.exp(-((p1 - 0.5) ** 2 + p2**2) / 2)
    df = (-2 * p1 / 3 + 0.4j) * f
    dg = -(p1 - 0.5) * gg
    ambient = w * df + 1j * (w * w * dg + p1 * gg)
    data = OnShellData(g, f + 1j * w * gg)
    tangential = boost_derivative(data).samples
    err = np.abs(tangential - ambient)[1:-1]
    scale = np.max(np.abs(ambient))
    assert err.max() < 5e-3 * scale
    fine = MomentumGrid(2, m, 8.0, 512)
    q1, q2 = np.meshgrid(fine.axis, fine.axis, indexing="ij")
    wf = fine.energies()
    f2 = np.exp(-(q1**2 + q2**2) / 3 + 0.4j * q1)
    g2 = np.exp(-((q1 - 0.5) ** 2 + q2**2) / 2)
    amb2 = wf * (-2 * q1 / 3 + 0.4j) * f2 + 1j * (wf * wf * (-(q1 - 0.5)) * g2 + q1 * g2)
    tan2 = boost_derivative(OnShellData(fine, f2 + 1j * wf * g2)).samples
    err2 = np.abs(tan2 - amb2)[1:-1].max()
    # second order: halving the spacing cuts the error by about four
    assert err2 < 0.3 * err.max()


def test_boost_is_skew_under_refinement():
    # generic smooth data with no parity, so the real part is pure discretization error
    ratios = []
    for n in (256, 512, 1024):
        g = MomentumGrid(1, 1.0, 12.0, n)
        p = g.axis
        F = OnShellData(g, np.exp(-((p - 0.3) ** 2) / 2 + 0.7j * p) * (1 + 0.2 * p + 0.1j * p**2))
        DF = boost_derivative(F)
        ratios.append(abs(inner_product(F, DF).real) / (F.norm() * DF.norm()))
    # the 1/(2 omega) weight cancels omega, and the central stencil then
    # telescopes: only the one-sided edge layers could break skewness
    assert max(ratios) < 1e-12


def test_conjugate_symmetry_and_split():
    g = MomentumGrid(2, 1.0, 8.0, 64)
    h = TimeZeroCharge.single("field", 1.0, (0.5, 0.2), 1.0)
    k = TimeZeroCharge.single("momentum", 0.3, (-0.4, 0.1), 0.7)
    for mode, tol in ((TruncationMode.FULL, 0.0), (TruncationMode.WEDGE_HALF_SPACE, 1e-10)):
        assert to_onshell(h, g, mode).conjugate_symmetry_defect() <= tol
        # i omega k^ is conjugate-odd; multiplying by i makes it even
        assert (1j * to_onshell(k, g, mode)).conjugate_symmetry_defect() <= tol
    full = to_onshell(h + k, g)
    fpart, kpart = full.split_real_parts()
    np.testing.assert_allclose(fpart.samples, to_onshell(h, g).samples, atol=1e-15)
    np.testing.assert_allclose(kpart.samples, to_onshell(k, g).samples, atol=1e-15)
