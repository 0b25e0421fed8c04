"""Time-zero field and momentum charges built from isotropic Gaussians.

A charge is the pair (h, k) of real test functions on R^d: h is the time-zero
field and k the time-zero momentum. Both are finite sums of terms
c * exp(-|x - a|^2 / sigma^2), which keeps Fourier transforms, derivatives
and half-space truncations in closed form.

Fourier convention: f^(p) = (2 pi)^(-d/2) int f(x) exp(+i p.x) dx. The
on-shell vector of the charge is F(p) = h^(p) + i omega(p) k^(p).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .faddeeva import faddeeva
from .momentum import MomentumGrid, OnShellData, _axis_shape

_SQRT_PI = math.sqrt(math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class GaussianTerm:
    amplitude: float
    center: tuple[float, ...]
    width: float

    def __post_init__(self):
        center = tuple(float(c) for c in np.atleast_1d(self.center))
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "amplitude", float(self.amplitude))
        object.__setattr__(self, "width", float(self.width))
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if not all(math.isfinite(v) for v in (self.amplitude, self.width, *center)):
            raise ValueError("Gaussian term fields must be finite")

    @property
    def dimension(self) -> int:
        return len(self.center)

    def scaled(self, factor: float) -> "GaussianTerm":
        return GaussianTerm(factor * self.amplitude, self.center, self.width)

    def shifted(self, dx1: float) -> "GaussianTerm":
        """Term translated by ``dx1`` along the x1 axis."""
        center = (self.center[0] + dx1,) + self.center[1:]
        return GaussianTerm(self.amplitude, center, self.width)


class TruncationMode(enum.Enum):
    FULL = "full"
    WEDGE_HALF_SPACE = "wedge"


@dataclass(frozen=True)
class TimeZeroCharge:
    field_terms: tuple[GaussianTerm, ...] = ()
    momentum_terms: tuple[GaussianTerm, ...] = ()
    dimension: int = 1

    def __post_init__(self):
        object.__setattr__(self, "field_terms", tuple(self.field_terms))
        object.__setattr__(self, "momentum_terms", tuple(self.momentum_terms))
        if self.dimension < 1:
            raise DimensionError("dimension must be >= 1")
        for term in self.field_terms + self.momentum_terms:
            if term.dimension != self.dimension:
                raise DimensionError(
                    f"term of dimension {term.dimension} in a charge of dimension {self.dimension}"
                )

    @classmethod
    def single(cls, which: str, amplitude: float, center, width: float) -> "TimeZeroCharge":
        term = GaussianTerm(amplitude, tuple(np.atleast_1d(center)), width)
        if which == "field":
            return cls(field_terms=(term,), dimension=term.dimension)
        if which == "momentum":
            return cls(momentum_terms=(term,), dimension=term.dimension)
        raise ValueError(f"which must be 'field' or 'momentum', got {which!r}")

    def is_zero(self) -> bool:
        return all(t.amplitude == 0 for t in self.field_terms + self.momentum_terms)

    def field_part(self) -> "TimeZeroCharge":
        return TimeZeroCharge(self.field_terms, (), self.dimension)

    def momentum_part(self) -> "TimeZeroCharge":
        return TimeZeroCharge((), self.momentum_terms, self.dimension)

    def scaled(self, factor: float) -> "TimeZeroCharge":
        return TimeZeroCharge(
            tuple(t.scaled(factor) for t in self.field_terms),
            tuple(t.scaled(factor) for t in self.momentum_terms),
            self.dimension,
        )

    def shifted(self, dx1: float) -> "TimeZeroCharge":
        return TimeZeroCharge(
            tuple(t.shifted(dx1) for t in self.field_terms),
            tuple(t.shifted(dx1) for t in self.momentum_terms),
            self.dimension,
        )

    def __add__(self, other: "TimeZeroCharge") -> "TimeZeroCharge":
        if other.dimension != self.dimension:
            raise DimensionError("cannot add charges of different dimension")
        return TimeZeroCharge(
            self.field_terms + other.field_terms,
            self.momentum_terms + other.momentum_terms,
            self.dimension,
        )

    def __neg__(self) -> "TimeZeroCharge":
        return self.scaled(-1.0)

    def __sub__(self, other: "TimeZeroCharge") -> "TimeZeroCharge":
        return self + (-other)

    def min_boundary_distance(self, offset: float = 0.0) -> float:
        """Smallest (a1 - offset) / sigma over all terms; +inf for a zero charge."""
        terms = [t for t in self.field_terms + self.momentum_terms if t.amplitude != 0]
        if not terms:
            return math.inf
        return min((t.center[0] - offset) / t.width for t in terms)


def _terms(charge: TimeZeroCharge, which: str) -> tuple[GaussianTerm, ...]:
    if which == "field":
        return charge.field_terms
    if which == "momentum":
        return charge.momentum_terms
    raise ValueError(f"which must be 'field' or 'momentum', got {which!r}")


def _as_point(charge: TimeZeroCharge, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[-1] != charge.dimension:
        raise DimensionError(f"point has dimension {x.shape[-1]}, charge has {charge.dimension}")
    return x


def evaluate(charge: TimeZeroCharge, which: str, x) -> float:
    """Value of h (``which="field"``) or k (``which="momentum"``) at x."""
    x = _as_point(charge, x)
    total = 0.0
    for t in _terms(charge, which):
        r2 = np.sum((x - np.asarray(t.center)) ** 2, axis=-1)
        total = total + t.amplitude * np.exp(-r2 / t.width**2)
    return total


def gradient_k(charge: TimeZeroCharge, x) -> np.ndarray:
    x = _as_point(charge, x)
    grad = np.zeros_like(x)
    for t in charge.momentum_terms:
        dx = x - np.asarray(t.center)
        g = t.amplitude * np.exp(-np.sum(dx * dx, axis=-1) / t.width**2)
        grad = grad - 2.0 * dx / t.width**2 * np.expand_dims(g, -1)
    return grad


def laplacian_k(charge: TimeZeroCharge, x) -> float:
    """Positive Laplacian -sum_j d^2 k / dx_j^2."""
    x = _as_point(charge, x)
    d = charge.dimension
    total = 0.0
    for t in charge.momentum_terms:
        dx = x - np.asarray(t.center)
        r2 = np.sum(dx * dx, axis=-1)
        s2 = t.width**2
        g = t.amplitude * np.exp(-r2 / s2)
        total = total + (2.0 * d / s2 - 4.0 * r2 / s2**2) * g
    return total


def gaussian_transform_1d(p: np.ndarray, center: float, width: float) -> np.ndarray:
    """(2 pi)^(-1/2) int exp(-(x - a)^2 / s^2) exp(i p x) dx."""
    s = width
    return (s / math.sqrt(2.0)) * np.exp(-0.25 * s * s * p * p + 1j * p * center)


def truncated_transform_1d(p: np.ndarray, center: float, width: float) -> np.ndarray:
    """(2 pi)^(-1/2) int_0^inf exp(-(x - a)^2 / s^2) exp(i p x) dx.

    Written through the Faddeeva function, always evaluated in the closed
    upper half plane. For a > 0 the full-line transform is split off
    explicitly and only the small complementary piece uses w.
    """
    s = width
    a = center
    p = np.asarray(p, dtype=float)
    pref = 0.5 * s * _SQRT_PI * _INV_SQRT_2PI
    if a >= 0:
        zeta = -0.5 * s * p + 1j * a / s
        gauss = np.exp(-0.25 * s * s * p * p + 1j * p * a)
        return 2.0 * pref * gauss - pref * math.exp(-(a / s) ** 2) * faddeeva(zeta)
    zeta = 0.5 * s * p - 1j * a / s
    return pref * math.exp(-(a / s) ** 2) * faddeeva(zeta)


def _term_transform(term: GaussianTerm, grid: MomentumGrid, mode: TruncationMode) -> np.ndarray:
    axis = grid.axis
    d = grid.dimension
    out = np.full(grid.shape, term.amplitude, dtype=complex)
    for k in range(d):
        if k == 0 and mode is TruncationMode.WEDGE_HALF_SPACE:
            factor = truncated_transform_1d(axis, term.center[0], term.width)
        else:
            factor = gaussian_transform_1d(axis, term.center[k], term.width)
        out = out * factor.reshape(_axis_shape(d, k))
    return out


def field_transform(charge: TimeZeroCharge, grid: MomentumGrid, mode: TruncationMode) -> np.ndarray:
    out = np.zeros(grid.shape, dtype=complex)
    for t in charge.field_terms:
        out += _term_transform(t, grid, mode)
    return out


def momentum_transform(charge: TimeZeroCharge, grid: MomentumGrid, mode: TruncationMode) -> np.ndarray:
    out = np.zeros(grid.shape, dtype=complex)
    for t in charge.momentum_terms:
        out += _term_transform(t, grid, mode)
    return out


def to_onshell(
    charge: TimeZeroCharge,
    grid: MomentumGrid,
    mode: TruncationMode = TruncationMode.FULL,
) -> OnShellData:
    """On-shell vector h^ + i omega k^ of the charge (optionally cut to x1 > 0)."""
    if charge.dimension != grid.dimension:
        raise DimensionError(
            f"charge dimension {charge.dimension} != grid dimension {grid.dimension}"
        )
    if grid.dimension == 1 and grid.mass == 0:
        raise ValueError("the massless case in one space dimension is not supported")
    # Accumulate term by term so that to_onshell(a + b) == to_onshell(a) + to_onshell(b)
    # holds bit for bit when the charges are concatenated in that order.
    samples = np.zeros(grid.shape, dtype=complex)
    for t in charge.field_terms:
        samples = samples + _term_transform(t, grid, mode)
    if charge.momentum_terms:
        i_omega = 1j * grid.energies()
        for t in charge.momentum_terms:
            samples = samples + i_omega * _term_transform(t, grid, mode)
    return OnShellData(grid, samples)


def choose_mode(charge: TimeZeroCharge, offset: float = 0.0, margin: float = 6.0) -> TruncationMode:
    """Full when every term sits more than ``margin`` widths inside the wedge."""
    if charge.min_boundary_distance(offset) > margin:
        return TruncationMode.FULL
    return TruncationMode.WEDGE_HALF_SPACE
