"""One-particle vectors sampled on the mass hyperboloid.

A vector is stored as its values F(p) at the nodes of a cell-centered cubic
grid in spatial momentum p; the energy p0 = omega(p) is implicit. The
Lorentz-invariant measure d^d p / (2 omega) turns grid sums into the
one-particle inner product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GridMismatchError(ValueError):
    """Two on-shell vectors live on different momentum grids."""


def omega(p, m: float) -> np.ndarray:
    """Relativistic energy sqrt(|p|^2 + m^2).

    ``p`` is a vector (last axis runs over components) or a scalar in d = 1.
    """
    if m < 0:
        raise ValueError(f"mass must be non-negative, got {m}")
    p = np.asarray(p, dtype=float)
    if p.ndim == 0:
        return np.sqrt(p * p + m * m)
    return np.sqrt(np.sum(p * p, axis=-1) + m * m)


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform cell-centered grid on [-P, P]^d."""

    dimension: int
    mass: float
    half_extent: float
    points_per_axis: int

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.mass < 0:
            raise ValueError("mass must be >= 0")
        if self.dimension == 1 and self.mass == 0:
            raise ValueError("the massless case in one space dimension is not supported")
        if not self.half_extent > 0:
            raise ValueError("half_extent must be positive")
        if self.points_per_axis < 8:
            raise ValueError("points_per_axis must be >= 8")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_extent / self.points_per_axis

    @property
    def axis(self) -> np.ndarray:
        """Node coordinates along one axis, symmetric about zero."""
        n = self.points_per_axis
        return -self.half_extent + self.spacing * (np.arange(n) + 0.5)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dimension

    @property
    def size(self) -> int:
        return self.points_per_axis**self.dimension

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dimension

    def momentum_squared(self) -> np.ndarray:
        """|p|^2 at every node, shaped like the grid."""
        ax2 = self.axis**2
        total = np.zeros(self.shape)
        for k in range(self.dimension):
            total = total + ax2.reshape(_axis_shape(self.dimension, k))
        return total

    def energies(self) -> np.ndarray:
        return np.sqrt(self.momentum_squared() + self.mass**2)

    def scaled(self, factor: float) -> "MomentumGrid":
        """Grid with cutoff times ``factor`` and spacing divided by ``factor``.

        The node count grows by ``factor**2`` (rounded to an even number) so
        that both the cutoff tail and the stencil error shrink.
        """
        n = int(round(self.points_per_axis * factor * factor))
        n += n % 2
        return MomentumGrid(self.dimension, self.mass, self.half_extent * factor, n)


def _axis_shape(d: int, k: int) -> tuple[int, ...]:
    shape = [1] * d
    shape[k] = -1
    return tuple(shape)


@dataclass(frozen=True)
class OnShellData:
    grid: MomentumGrid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.size != self.grid.size:
            raise ValueError(
                f"expected {self.grid.size} samples for this grid, got {samples.size}"
            )
        samples = samples.reshape(self.grid.shape)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __add__(self, other: "OnShellData") -> "OnShellData":
        _check_same_grid(self, other)
        return OnShellData(self.grid, self.samples + other.samples)

    def __sub__(self, other: "OnShellData") -> "OnShellData":
        _check_same_grid(self, other)
        return OnShellData(self.grid, self.samples - other.samples)

    def __mul__(self, scalar) -> "OnShellData":
        return OnShellData(self.grid, scalar * self.samples)

    __rmul__ = __mul__

    def reflected(self) -> np.ndarray:
        """Samples at -p, i.e. F(-p) on the same node layout."""
        return self.samples[(slice(None, None, -1),) * self.grid.dimension]

    def conjugate_symmetry_defect(self) -> float:
        """max |F(-p) - conj F(p)|, zero for data built from real test functions."""
        if self.samples.size == 0:
            return 0.0
        return float(np.max(np.abs(self.reflected() - np.conj(self.samples))))

    def split_real_parts(self) -> tuple["OnShellData", "OnShellData"]:
        """Split F into its conjugate-even and conjugate-odd parts.

        For F = h^ + i omega k^ built from real h, k the first part is the field
        contribution and the second the momentum contribution.
        """
        mirror = np.conj(self.reflected())
        even = 0.5 * (self.samples + mirror)
        odd = 0.5 * (self.samples - mirror)
        return OnShellData(self.grid, even), OnShellData(self.grid, odd)

    def norm(self) -> float:
        return float(np.sqrt(inner_product(self, self).real))


def _check_same_grid(a: OnShellData, b: OnShellData) -> None:
    if a.grid != b.grid:
        raise GridMismatchError(f"{a.grid} != {b.grid}")


def inner_product(F: OnShellData, G: OnShellData) -> complex:
    """Midpoint-rule approximation of int conj(F) G d^d p / (2 omega)."""
    _check_same_grid(F, G)
    grid = F.grid
    weight = grid.cell_volume / (2.0 * grid.energies())
    fr, fi = F.samples.real, F.samples.imag
    gr, gi = G.samples.real, G.samples.imag
    # Separate real products instead of complex multiplication: swapping F and
    # G then leaves the real part unchanged and negates the imaginary part bit
    # for bit, so conjugate symmetry is exact.
    re = np.sum((fr * gr + fi * gi) * weight)
    im = np.sum((fr * gi - fi * gr) * weight)
    return complex(float(re), float(im))


def symplectic_form(F: OnShellData, G: OnShellData) -> float:
    """Imaginary part of the one-particle inner product (exactly antisymmetric)."""
    return inner_product(F, G).imag


def d_dp1(samples: np.ndarray, spacing: float, stride: int = 1) -> np.ndarray:
    """Second-order finite difference along the first momentum axis.

    Central three-point stencil in the interior, one-sided three-point
    stencils on the outermost ``stride`` layers at each end. ``stride > 1``
    uses the sub-lattice with spacing ``stride * spacing``.
    """
    s = stride
    h = s * spacing
    f = np.asarray(samples)
    n = f.shape[0]
    if n < 2 * s + 1:
        raise ValueError("grid too small for the requested stencil")
    out = np.empty_like(f)
    out[s:-s] = (f[2 * s:] - f[: -2 * s]) / (2.0 * h)
    out[:s] = (-3.0 * f[:s] + 4.0 * f[s : 2 * s] - f[2 * s : 3 * s]) / (2.0 * h)
    out[-s:] = (3.0 * f[-s:] - 4.0 * f[-2 * s : -s] + f[-3 * s : n - 2 * s]) / (2.0 * h)
    return out


def boost_derivative(F: OnShellData) -> OnShellData:
    """Generator of the x1-boost acting on on-shell data, omega * dF/dp1."""
    grid = F.grid
    derivative = d_dp1(F.samples, grid.spacing)
    return OnShellData(grid, grid.energies() * derivative)
