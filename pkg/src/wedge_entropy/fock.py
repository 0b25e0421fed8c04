"""Brute-force Araki relative entropy for one bosonic mode in a truncated Fock basis.

The reduced state of a two-mode squeezed vacuum is thermal, rho = (1 - mu) mu^N,
and a coherent excitation of the purification reduces to a displacement of
that thermal state. Everything here works with explicit density matrices and
matrix logarithms; nothing uses the closed form it is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

EIGENVALUE_FLOOR = 1e-300
MAX_DISPLACEMENT_DEFICIT = 1e-4
DEFAULT_CUTOFF = 30
# Number of consecutive cutoffs fed to the epsilon algorithm.
EXTRAPOLATION_DEPTH = 7


class TruncationError(ValueError):
    """The Fock cutoff is too small for the requested state."""


@dataclass(frozen=True)
class TruncatedFockState:
    cutoff: int
    matrix: np.ndarray
    trace_deficit: float = 0.0

    def __post_init__(self):
        if self.cutoff < 2:
            raise ValueError("cutoff must be >= 2")
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.cutoff + 1, self.cutoff + 1):
            raise ValueError("matrix shape does not match the cutoff")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-6:
            raise ValueError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", m)

    def mean_number(self) -> float:
        n = np.arange(self.cutoff + 1)
        return float(np.sum(n * np.diag(self.matrix).real))

    def von_neumann_entropy(self) -> float:
        vals = np.linalg.eigvalsh(self.matrix)
        vals = vals[vals > EIGENVALUE_FLOOR]
        return float(-np.sum(vals * np.log(vals)))

    def number_distribution(self) -> np.ndarray:
        return np.diag(self.matrix).real.copy()


def _hermitian_log(matrix: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(matrix)
    vals = np.clip(vals, EIGENVALUE_FLOOR, None)
    return (vecs * np.log(vals)) @ vecs.conj().T


def annihilation(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1)


def thermal_state(mu: float, cutoff: int = DEFAULT_CUTOFF) -> TruncatedFockState:
    """Geometric number distribution, renormalized after truncation."""
    if not (0.0 <= mu < 1.0):
        raise ValueError(f"mu must lie in [0, 1), got {mu}")
    weights = (1.0 - mu) * mu ** np.arange(cutoff + 1, dtype=float)
    deficit = 1.0 - float(weights.sum())
    weights = weights / weights.sum()
    return TruncatedFockState(cutoff, np.diag(weights).astype(complex), deficit)


def displacement_matrix(alpha: complex, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """exp(alpha a^dag - conj(alpha) a) in the truncated number basis."""
    a = annihilation(cutoff)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def unitarity_deficit(d: np.ndarray) -> float:
    return float(np.linalg.norm(d.conj().T @ d - np.eye(d.shape[0])))


def displacement_deficit(alpha: complex, cutoff: int) -> float:
    """Poisson weight of the coherent state |alpha> above the cutoff."""
    x = abs(alpha) ** 2
    if x == 0:
        return 0.0
    n = np.arange(cutoff + 1)
    log_p = -x + n * math.log(x) - np.array([math.lgamma(k + 1) for k in n])
    return max(0.0, 1.0 - float(np.exp(log_p).sum()))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Tr rho (log rho - log sigma) for Hermitian density matrices."""
    return float(np.trace(rho @ (_hermitian_log(rho) - _hermitian_log(sigma))).real)


def truncated_relative_entropy(mu: float, alpha: complex, cutoff: int) -> float:
    """S(D rho D^dag || rho) with every operator cut at ``cutoff``."""
    rho = thermal_state(mu, cutoff).matrix
    d = displacement_matrix(alpha, cutoff)
    rho_alpha = d @ rho @ d.conj().T
    rho_alpha = 0.5 * (rho_alpha + rho_alpha.conj().T)
    return relative_entropy(rho_alpha, rho)


def _epsilon_limit(seq) -> float:
    """Wynn's epsilon algorithm; returns the deepest even-column estimate."""
    prev = [0.0] * (len(seq) + 1)
    cur = [float(v) for v in seq]
    best = cur[-1]
    column = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            diff = cur[i + 1] - cur[i]
            if diff == 0.0:
                # sequence already converged at this depth
                return cur[i + 1] if column % 2 == 0 else best
            nxt.append(prev[i + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        column += 1
        if column % 2 == 0:
            best = cur[-1]
    return best


def displaced_thermal_relative_entropy(
    mu: float, alpha: complex, cutoff: int = DEFAULT_CUTOFF, extrapolate: bool = True
) -> float:
    """Araki relative entropy between a displaced thermal state and the thermal state.

    With ``extrapolate`` the truncated values at the last EXTRAPOLATION_DEPTH
    cutoffs (all <= ``cutoff``) are accelerated with Wynn's epsilon algorithm;
    they converge geometrically, at rate mu, in the cutoff.
    """
    if not (0.0 <= mu < 1.0):
        raise ValueError(f"mu must lie in [0, 1), got {mu}")
    if displacement_deficit(alpha, cutoff) > MAX_DISPLACEMENT_DEFICIT:
        raise TruncationError(
            f"cutoff {cutoff} too small for |alpha|^2 = {abs(alpha) ** 2:.3g}"
        )
    if alpha == 0:
        return 0.0
    if not extrapolate or mu == 0.0:
        return truncated_relative_entropy(mu, alpha, cutoff)
    depth = min(EXTRAPOLATION_DEPTH, cutoff - 1)
    seq = [truncated_relative_entropy(mu, alpha, c) for c in range(cutoff - depth + 1, cutoff + 1)]
    return _epsilon_limit(seq)


def effective_displacement(lam: float, z: complex) -> complex:
    """Single-mode displacement seen by the reduced state for h = (z, sqrt(lam) conj z)."""
    return z * math.sqrt(1.0 - lam)


def coherent_araki_entropy(
    lam: float, z: complex, cutoff: int = DEFAULT_CUTOFF, extrapolate: bool = True
) -> float:
    if not (0.0 < lam < 1.0):
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    return displaced_thermal_relative_entropy(lam, effective_displacement(lam, z), cutoff, extrapolate)


def closed_form_entropy(lam: float, z: complex) -> float:
    """(1 - lam)(-log lam)|z|^2."""
    return (1.0 - lam) * (-math.log(lam)) * abs(z) ** 2
