"""Modular theory of standard subspaces in finite dimension.

C^n is represented as R^2n with coordinates (Re z, Im z) and the complex
structure Jc = [[0, -1], [1, 0]]. Antilinear operators are real matrices that
anticommute with Jc; the complex adjoint of an antilinear operator is its real
transpose, so the modular operator is Delta = S^T S.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STANDARDNESS_LIMIT = 1e8


class StandardnessError(ValueError):
    pass


def _sym_function(matrix: np.ndarray, func) -> np.ndarray:
    vals, vecs = np.linalg.eigh(0.5 * (matrix + matrix.T))
    return (vecs * func(vals)) @ vecs.T


@dataclass(frozen=True)
class ComplexStructureSpace:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("complex dimension must be >= 1")

    @property
    def Jc(self) -> np.ndarray:
        n = self.n
        jc = np.zeros((2 * n, 2 * n))
        jc[:n, n:] = -np.eye(n)
        jc[n:, :n] = np.eye(n)
        return jc

    def to_real(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.concatenate([z.real, z.imag], axis=-1)

    def to_complex(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x[..., : self.n] + 1j * x[..., self.n :]

    def inner(self, x, y) -> complex:
        """<x, y>, antilinear in x."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return complex(x @ y, (self.Jc @ x) @ y)

    def unitary_to_real(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=complex)
        return np.block([[u.real, -u.imag], [u.imag, u.real]])


@dataclass(frozen=True)
class FiniteStandardSubspace:
    space: ComplexStructureSpace
    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        n = self.space.n
        if basis.shape != (2 * n, n):
            raise ValueError(f"basis must have shape {(2 * n, n)}, got {basis.shape}")
        q, _ = np.linalg.qr(basis)
        object.__setattr__(self, "basis", q)

    def frame(self) -> np.ndarray:
        """[basis | Jc basis], invertible exactly when K is standard."""
        return np.hstack([self.basis, self.space.Jc @ self.basis])

    def condition_number(self) -> float:
        return float(np.linalg.cond(self.frame()))

    def projection_residual(self, h) -> float:
        h = np.asarray(h, dtype=float)
        return float(np.linalg.norm(h - self.basis @ (self.basis.T @ h)))

    def transformed(self, u_real: np.ndarray) -> "FiniteStandardSubspace":
        return FiniteStandardSubspace(self.space, u_real @ self.basis)


@dataclass(frozen=True)
class ModularData:
    S_real: np.ndarray
    Delta_real: np.ndarray | None = None
    J_real: np.ndarray | None = None
    # Delta = V diag(s^2) V^T kept in factored form so functions of Delta
    # keep full relative accuracy on its small eigenvalues
    singular_values: np.ndarray | None = None
    right_vectors: np.ndarray | None = None

    def delta_function(self, func) -> np.ndarray:
        if self.singular_values is None:
            return _sym_function(self.Delta_real, func)
        v = self.right_vectors
        return (v * func(self.singular_values**2)) @ v.T

    def log_delta(self) -> np.ndarray:
        return self.delta_function(np.log)

    def inverse_delta(self) -> np.ndarray:
        return self.delta_function(lambda x: 1.0 / x)


def tomita_operator(K: FiniteStandardSubspace) -> ModularData:
    """S with S(h + Jc k) = h - Jc k for h, k in K."""
    cond = K.condition_number()
    if not np.isfinite(cond) or cond > STANDARDNESS_LIMIT:
        raise StandardnessError(f"subspace is not standard (condition number {cond:.3g})")
    n = K.space.n
    frame = K.frame()
    signs = np.concatenate([np.ones(n), -np.ones(n)])
    S = (frame * signs) @ np.linalg.inv(frame)
    return ModularData(S)


def modular_operator(data: ModularData) -> ModularData:
    """Polar decomposition S = J Delta^(1/2).

    Taken from the SVD S = U diag(s) V^T, so J = U V^T and Delta = V diag(s^2) V^T;
    forming S^T S first would square the condition number.
    """
    S = data.S_real
    u, sv, vt = np.linalg.svd(S)
    if sv.min() <= 0 or sv.max() / sv.min() > STANDARDNESS_LIMIT:
        raise StandardnessError(
            f"modular operator is singular (spectrum [{sv.min() ** 2:.3g}, {sv.max() ** 2:.3g}])"
        )
    delta = (vt.T * sv**2) @ vt
    delta = 0.5 * (delta + delta.T)
    return ModularData(S, delta, u @ vt, sv, vt.T)


def modular_data(K: FiniteStandardSubspace) -> ModularData:
    return modular_operator(tomita_operator(K))


def tomita_residuals(K: FiniteStandardSubspace, data: ModularData | None = None) -> dict[str, float]:
    """Norms of the defects of the Tomita relations (all should be ~0)."""
    if data is None:
        data = modular_data(K)
    S, D, J = data.S_real, data.Delta_real, data.J_real
    jc = K.space.Jc
    eye = np.eye(S.shape[0])
    sqrt_d = data.delta_function(np.sqrt)
    return {
        "S_squared": float(np.linalg.norm(S @ S - eye)),
        "S_antilinear": float(np.linalg.norm(S @ jc + jc @ S)),
        "Delta_commutes_Jc": float(np.linalg.norm(D @ jc - jc @ D)),
        "J_Delta_J": float(np.linalg.norm(J @ D @ J - data.inverse_delta())),
        "polar": float(np.linalg.norm(S - J @ sqrt_d)),
        "J_squared": float(np.linalg.norm(J @ J - eye)),
    }


def vector_entropy(K: FiniteStandardSubspace, h, data: ModularData | None = None) -> float:
    """Entropy -(h, log Delta h) of a vector h in K."""
    h = np.asarray(h, dtype=float)
    scale = max(1.0, float(np.linalg.norm(h)))
    if K.projection_residual(h) > 1e-10 * scale:
        raise ValueError("vector does not lie in the standard subspace")
    if not np.any(h):
        return 0.0
    if data is None:
        data = modular_data(K)
    log_d = data.log_delta()
    value = -(h @ log_d @ h)
    imag = -((K.space.Jc @ h) @ log_d @ h)
    if abs(imag) > 1e-10 * max(1.0, abs(value)):
        raise ArithmeticError(f"entropy has an imaginary part {imag:.3g}")
    return float(value)


def squeezed_vector(lam: float, z: complex) -> np.ndarray:
    """Real coordinates of (z, sqrt(lam) conj z) in C^2."""
    return ComplexStructureSpace(2).to_real([z, np.sqrt(lam) * np.conj(z)])


def subspace_from_modular_data(lambdas, space: ComplexStructureSpace | None = None) -> FiniteStandardSubspace:
    """Standard subspace with Delta = diag(lam, 1/lam) on each coordinate pair.

    With J = pair swap composed with conjugation, K is the fixed-point set of
    J Delta^(1/2): vectors (z, sqrt(lam) conj z) in each pair.
    """
    lambdas = [float(v) for v in lambdas]
    if not lambdas:
        raise ValueError("at least one modular eigenvalue is required")
    if any(not (0.0 < v < 1.0) for v in lambdas):
        raise ValueError("modular eigenvalues must lie in (0, 1)")
    n = 2 * len(lambdas)
    if space is None:
        space = ComplexStructureSpace(n)
    if space.n != n:
        raise ValueError(f"space has complex dimension {space.n}, expected {n}")
    basis = np.zeros((2 * n, n))
    for j, lam in enumerate(lambdas):
        r = np.sqrt(lam)
        a, b = 2 * j, 2 * j + 1
        # z = 1
        basis[a, a] = 1.0
        basis[b, a] = r
        # z = i
        basis[n + a, b] = 1.0
        basis[n + b, b] = -r
    return FiniteStandardSubspace(space, basis)


def random_standard_subspace(n: int, rng: np.random.Generator) -> FiniteStandardSubspace:
    """Generic real n-dimensional subspace of C^n (standard with probability one)."""
    space = ComplexStructureSpace(n)
    while True:
        K = FiniteStandardSubspace(space, rng.standard_normal((2 * n, n)))
        if K.condition_number() < 1e4:
            return K


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
