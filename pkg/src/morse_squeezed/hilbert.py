"""
Truncated Fock space of a Morse-like f-deformed oscillator.

The deformation is fixed to ``f^2(n) = 1 - chi_a n`` with ``chi_a = 1/(2N+1)``,
which reproduces the Morse spectrum for ``N`` bound states.  Everything here is
dense numpy on the ``N`` bound levels ``|0>, ..., |N-1>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ParameterError

__all__ = [
    "ModelParams", "StateVector", "DenseOperator",
    "make_params", "deformation_f2", "ladder_matrices", "ladder_band",
    "energy", "energies", "number_operator", "hamiltonian", "apply",
    "basis_state", "overlap", "fix_phase", "log_factorial", "log_comb",
]

HERMITIAN_ATOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Oscillator specification in natural units (hbar = mu = 1).

    Parameters
    ----------
    N : int
        Number of bound states, at least 2.
    Omega : float
        Harmonic frequency, strictly positive.
    """

    N: int
    Omega: float = 1.0

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N:
            raise ParameterError(f"N must be an integer, got {self.N!r}")
        if self.N < 2:
            raise ParameterError(f"need at least two bound states, got N={self.N}")
        if not (self.Omega > 0 and math.isfinite(self.Omega)):
            raise ParameterError(f"Omega must be positive and finite, got {self.Omega}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "Omega", float(self.Omega))

    @property
    def k(self) -> int:
        return 2 * self.N + 1

    @property
    def chi_a(self) -> float:
        return 1.0 / self.k


def make_params(N: int, Omega: float = 1.0) -> ModelParams:
    return ModelParams(N, Omega)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the ``N`` bound levels."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.ndim != 1:
            raise ParameterError("state amplitudes must be a 1-d array")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    @property
    def leakage(self) -> float:
        """Occupation of the topmost retained level."""
        return float(abs(self.amps[-1]) ** 2)

    def __len__(self):
        return self.dim


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Dense complex matrix on the truncated space.

    ``herm_deviation`` records ``max|M - M^dagger|`` of the matrix as it was
    assembled, before any symmetrization.
    """

    matrix: np.ndarray
    hermitian: bool = False
    herm_deviation: float = field(default=0.0)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ParameterError(f"operator must be square, got shape {m.shape}")
        if self.hermitian:
            dev = np.abs(m - m.conj().T).max()
            if dev > HERMITIAN_ATOL:
                raise ParameterError(f"matrix flagged hermitian deviates by {dev:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def H(self) -> DenseOperator:
        return DenseOperator(self.matrix.conj().T, self.hermitian, self.herm_deviation)

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return DenseOperator(self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            return apply(self, other)
        return NotImplemented


def _check_level(n: int, upper: int) -> int:
    if int(n) != n or not 0 <= n <= upper:
        raise ParameterError(f"level index {n} outside [0, {upper}]")
    return int(n)


def deformation_f2(n: int, params: ModelParams) -> float:
    """Squared deformation function ``1 - chi_a n`` for ``0 <= n <= N``."""
    n = _check_level(n, params.N)
    return 1.0 - params.chi_a * n


def ladder_band(dim: int, f2: Callable[[int], float]) -> np.ndarray:
    """Lowering-operator matrix with ``A[n-1, n] = sqrt(n f2(n))`` on ``dim`` levels."""
    A = np.zeros((dim, dim))
    n = np.arange(1, dim)
    A[n - 1, n] = np.sqrt(n * np.array([f2(j) for j in n], dtype=float))
    return A


def ladder_matrices(params: ModelParams) -> tuple[DenseOperator, DenseOperator]:
    """Deformed annihilation and creation operators on the ``N`` bound levels.

    The raising action out of level ``N-1`` is truncated to zero.

    Examples
    --------
    >>> A, Ad = ladder_matrices(make_params(10))
    >>> round(float(A.matrix[0, 1].real), 6)
    0.9759
    """
    A = ladder_band(params.N, lambda j: 1.0 - params.chi_a * j)
    return DenseOperator(A), DenseOperator(A.T)


def energy(n: int, params: ModelParams) -> float:
    n = _check_level(n, params.N - 1)
    chi = params.chi_a
    return params.Omega * (n + 0.5 - chi * (n + 0.5) ** 2 - chi / 4)


def energies(params: ModelParams) -> np.ndarray:
    """All bound-state energies as an array of length ``N``."""
    n = np.arange(params.N) + 0.5
    chi = params.chi_a
    return params.Omega * (n - chi * n**2 - chi / 4)


def number_operator(params: ModelParams) -> DenseOperator:
    return DenseOperator(np.diag(np.arange(params.N, dtype=float)), hermitian=True)


def hamiltonian(params: ModelParams) -> DenseOperator:
    """``(Omega/2)(A^dagger A + A A^dagger)`` built from the truncated ladder matrices.

    Agrees with :func:`energies` on every level except ``N-1``, where the
    ``A A^dagger`` term is cut by the truncation.
    """
    A, Ad = ladder_matrices(params)
    H = 0.5 * params.Omega * (Ad.matrix @ A.matrix + A.matrix @ Ad.matrix)
    return DenseOperator(H, hermitian=True)


def apply(op: DenseOperator, psi: StateVector) -> np.ndarray:
    """Matrix-vector product; the result is not renormalized."""
    if op.dim != psi.dim:
        raise ParameterError(f"dimension mismatch: operator {op.dim}, state {psi.dim}")
    return op.matrix @ psi.amps


def basis_state(n: int, params: ModelParams) -> StateVector:
    n = _check_level(n, params.N - 1)
    amps = np.zeros(params.N, dtype=complex)
    amps[n] = 1.0
    return StateVector(amps)


def overlap(psi: StateVector, phi: StateVector) -> float:
    """Squared modulus of the inner product, insensitive to global phase."""
    if psi.dim != phi.dim:
        raise ParameterError(f"dimension mismatch: {psi.dim} vs {phi.dim}")
    return float(abs(np.vdot(psi.amps, phi.amps)) ** 2)


def fix_phase(amps: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    """Normalize and rotate so the first non-negligible amplitude is real positive."""
    amps = np.asarray(amps, dtype=complex)
    norm = np.linalg.norm(amps)
    if not norm > 0:
        raise ParameterError("cannot normalize a zero vector")
    amps = amps / norm
    mags = np.abs(amps)
    first = int(np.argmax(mags > rtol * mags.max()))
    return amps * (abs(amps[first]) / amps[first])


def log_factorial(n: int) -> float:
    return math.lgamma(n + 1)


def log_comb(n: int, r: int) -> float:
    """Natural log of the binomial coefficient; ``-inf`` outside ``0 <= r <= n``."""
    if r < 0 or r > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
