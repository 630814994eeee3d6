"""
Builders for the two families of Morse-like squeezed coherent states.

LOQCS (ladder-operator quasi-coherent states) solve ``(A + gamma A^dagger) psi = alpha psi``
on the bound levels and come in three flavours: the closed-form binomial sum,
forward iteration of the three-term recurrence, and an eigensolver oracle.
DPSCS (deformed photon-subtracted coherent states) are ``A^m`` applied to the
deformed displacement-operator coherent state (DOCS).

Every builder returns a unit-norm :class:`StateVector` whose first
non-negligible amplitude is real and positive.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EmptyStateError, OutOfRegimeError, ParameterError, RegimeWarning
from .hilbert import (
    ModelParams, StateVector, fix_phase, ladder_band, ladder_matrices, log_comb,
    log_factorial,
)

__all__ = [
    "LoqcsMethod", "LoqcsSpec", "DpscsSpec", "nearest_int", "loqcs_index",
    "loqcs_closed_form", "loqcs_recursion", "loqcs_eigen_oracle", "build_loqcs",
    "loqcs_spectrum", "loqcs_residual", "lattice_alpha", "docs_state", "dpscs_state",
    "dpscs_matrix_oracle", "zeta_from_alpha",
]

LEAKAGE_LIMIT = 1e-2


class LoqcsMethod(str, enum.Enum):
    closed_form = "closed_form"
    recursion = "recursion"
    eigen_oracle = "eigen_oracle"


@dataclass(frozen=True)
class LoqcsSpec:
    alpha: float
    gamma: float
    method: LoqcsMethod = LoqcsMethod.closed_form

    def __post_init__(self):
        _check_loqcs_args(self.alpha, self.gamma)
        object.__setattr__(self, "method", LoqcsMethod(self.method))


@dataclass(frozen=True)
class DpscsSpec:
    """Photon-subtracted state ``A^m |zeta>`` with ``zeta = e^{i phi} tan(alpha_mag chi_a)``."""

    alpha_mag: float
    phi: float = 0.0
    m: int = 0

    def __post_init__(self):
        if not (self.alpha_mag >= 0 and math.isfinite(self.alpha_mag)):
            raise ParameterError(f"alpha_mag must be finite and >= 0, got {self.alpha_mag}")
        if not math.isfinite(self.phi):
            raise ParameterError(f"phi must be finite, got {self.phi}")
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise ParameterError(f"m must be a non-negative integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))

    def zeta(self, params: ModelParams) -> complex:
        return zeta_from_alpha(self.alpha_mag, self.phi, params)


def _check_loqcs_args(alpha, gamma):
    if not math.isfinite(alpha):
        raise ParameterError(f"alpha must be real and finite, got {alpha}")
    if not (gamma >= 0 and math.isfinite(gamma)):
        raise ParameterError(f"gamma must be finite and >= 0, got {gamma}")


def _finish(amps: np.ndarray) -> StateVector:
    psi = StateVector(fix_phase(amps))
    if psi.leakage > LEAKAGE_LIMIT:
        warnings.warn(
            f"top-level occupation {psi.leakage:.3g} exceeds {LEAKAGE_LIMIT:g}; "
            "state is not confined to the low-lying spectrum",
            RegimeWarning, stacklevel=3,
        )
    return psi


def _from_logs(log_mag: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """Combine log-magnitudes and unit phases, rescaled so the largest entry is 1."""
    finite = np.isfinite(log_mag)
    if not finite.any():
        raise EmptyStateError("all amplitudes vanish")
    shift = log_mag[finite].max()
    out = np.zeros(len(log_mag), dtype=complex)
    out[finite] = np.exp(log_mag[finite] - shift) * phase[finite]
    return out


def nearest_int(x: float) -> int:
    """Closest integer, ties rounded away from zero."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def loqcs_index(alpha: float, gamma: float, params: ModelParams) -> int:
    """Binomial index ``N + [alpha / (2 sqrt(chi_a gamma))]`` selecting the closed-form branch."""
    if gamma <= 0:
        raise ParameterError("closed-form index needs gamma > 0; use loqcs_recursion for gamma = 0")
    return params.N + nearest_int(alpha / (2.0 * math.sqrt(params.chi_a * gamma)))


def lattice_alpha(n: int, gamma: float, params: ModelParams) -> float:
    """Eigenvalue ``2 sqrt(gamma chi_a) (n - N)`` at which the closed form is exact."""
    return 2.0 * math.sqrt(gamma * params.chi_a) * (n - params.N)


def loqcs_closed_form(alpha: float, gamma: float, params: ModelParams) -> StateVector:
    """Closed-form LOQCS amplitudes on levels ``0..N-1``.

    The alternating inner sum is evaluated in exact integer arithmetic, so
    cancellations (e.g. the odd levels of the squeezed vacuum) are exact zeros.
    Factorials and powers of ``gamma`` are combined in log space.

    Raises
    ------
    ParameterError
        If ``gamma == 0``.
    OutOfRegimeError
        If the derived index falls outside ``[0, 2N]``.
    """
    _check_loqcs_args(alpha, gamma)
    N = params.N
    n = loqcs_index(alpha, gamma, params)
    if not 0 <= n <= 2 * N:
        raise OutOfRegimeError(
            f"alpha={alpha} gives binomial index {n} outside [0, {2 * N}]"
        )
    log_mag = np.full(N, -math.inf)
    sign = np.ones(N)
    for m in range(N):
        s = sum(
            math.comb(n, j) * math.comb(2 * N - n, m - j) * (-1) ** j
            for j in range(max(0, m - (2 * N - n)), min(n, m) + 1)
        )
        if s == 0:
            continue
        log_mag[m] = (
            0.5 * m * math.log(gamma)
            + 0.5 * (log_factorial(m) + log_factorial(2 * N - m))
            + math.log(abs(s))
        )
        sign[m] = (-1) ** m * (1 if s > 0 else -1)
    return _finish(_from_logs(log_mag, sign))


def loqcs_recursion(alpha: float, gamma: float, params: ModelParams) -> StateVector:
    """Forward iteration of the three-term recurrence from ``C_0 = 1``, ``C_{-1} = 0``.

    Each step solves row ``m`` of ``(A + gamma A^dagger) psi = alpha psi`` for
    ``C_{m+1}``; the last row (which would need ``C_N``) is left unsatisfied.
    """
    _check_loqcs_args(alpha, gamma)
    N, k = params.N, params.k
    C = np.zeros(N)
    C[0] = 1.0
    for m in range(N - 1):
        prev = gamma * C[m - 1] * math.sqrt(m * (k - m)) if m > 0 else 0.0
        C[m + 1] = (math.sqrt(k) * alpha * C[m] - prev) / math.sqrt((m + 1) * (2 * N - m))
        big = np.abs(C[: m + 2]).max()
        if big > 1e150:
            C[: m + 2] /= big
    return _finish(C)


def _extended_symmetric(gamma: float, params: ModelParams) -> np.ndarray:
    # On 2N+1 levels the deformation 1 - n/(2N+1) closes the ladder by itself
    # (A^dagger out of level 2N vanishes).  D^{-1}(A + gamma A^dagger)D with
    # D = diag(gamma^{m/2}) is symmetric with off-diagonal sqrt(gamma) A[m, m+1].
    k = params.k
    band = np.diag(ladder_band(k, lambda j: 1.0 - j / k), 1)
    return math.sqrt(gamma) * (np.diag(band, 1) + np.diag(band, -1))


def loqcs_spectrum(gamma: float, params: ModelParams) -> np.ndarray:
    """Ascending eigenvalues of ``A + gamma A^dagger`` on the closed ``2N+1``-level ladder."""
    _check_loqcs_args(0.0, gamma)
    if gamma == 0:
        return np.zeros(params.k)
    return np.linalg.eigvalsh(_extended_symmetric(gamma, params))


def loqcs_eigen_oracle(alpha: float, gamma: float, params: ModelParams) -> StateVector:
    """LOQCS from a full eigendecomposition, independent of the closed form and recurrence.

    ``A + gamma A^dagger`` is diagonalized on the ``2N+1`` levels where the
    deformed ladder closes exactly; the eigenvector whose eigenvalue is closest
    to ``alpha`` (ties toward smaller magnitude) is restricted to the ``N``
    bound levels and renormalized.  For ``gamma = 0`` the operator is nilpotent
    and its only eigenvector is the vacuum.
    """
    _check_loqcs_args(alpha, gamma)
    N = params.N
    if gamma == 0:
        amps = np.zeros(N)
        amps[0] = 1.0
        return _finish(amps)
    w, u = np.linalg.eigh(_extended_symmetric(gamma, params))
    dist = np.round(np.abs(w - alpha), 12)
    i = min(range(len(w)), key=lambda j: (dist[j], abs(w[j])))
    v = u[:, i] * gamma ** (0.5 * np.arange(params.k))
    return _finish(v[:N])


def build_loqcs(spec: LoqcsSpec, params: ModelParams) -> StateVector:
    """Dispatch on ``spec.method``; ``gamma = 0`` always goes to the recurrence."""
    if spec.method is LoqcsMethod.recursion or spec.gamma == 0:
        return loqcs_recursion(spec.alpha, spec.gamma, params)
    if spec.method is LoqcsMethod.closed_form:
        return loqcs_closed_form(spec.alpha, spec.gamma, params)
    return loqcs_eigen_oracle(spec.alpha, spec.gamma, params)


def loqcs_residual(psi: StateVector, alpha: float, gamma: float, params: ModelParams) -> float:
    """``||(A + gamma A^dagger) psi - alpha psi||`` on the truncated space."""
    A, Ad = ladder_matrices(params)
    return float(np.linalg.norm((A.matrix + gamma * Ad.matrix) @ psi.amps - alpha * psi.amps))


def zeta_from_alpha(alpha_mag: float, phi: float, params: ModelParams) -> complex:
    x = alpha_mag * params.chi_a
    if abs(math.cos(x)) < 1e-15:
        raise ParameterError(f"|alpha| chi_a = {x} hits a pole of tan")
    return complex(math.cos(phi), math.sin(phi)) * math.tan(x)


def _log_polar(zeta: complex) -> tuple[float, float]:
    return math.log(abs(zeta)), math.atan2(zeta.imag, zeta.real)


def docs_state(zeta: complex, params: ModelParams) -> StateVector:
    """Deformed displacement-operator coherent state, renormalized after truncation.

    Amplitudes are proportional to ``sqrt(C(2N, n)) zeta^n`` for ``n < N``.
    """
    zeta = complex(zeta)
    if not (math.isfinite(zeta.real) and math.isfinite(zeta.imag)):
        raise ParameterError(f"zeta must be finite, got {zeta}")
    N = params.N
    if zeta == 0:
        amps = np.zeros(N)
        amps[0] = 1.0
        return _finish(amps)
    lz, arg = _log_polar(zeta)
    n = np.arange(N)
    log_mag = np.array([0.5 * log_comb(2 * N, j) for j in n]) + n * lz
    return _finish(_from_logs(log_mag, np.exp(1j * n * arg)))


def dpscs_state(spec: DpscsSpec, params: ModelParams) -> StateVector:
    """Closed-form photon-subtracted coherent state.

    Amplitude of ``|n>``, ``n = 0..N-1-m``, is proportional to
    ``C(2N, n+m) C(2N, n)^{-1/2} (n+m)!/n! zeta^{n+m}``.
    """
    N, m = params.N, spec.m
    if m >= N:
        raise EmptyStateError(f"subtracting m={m} quanta from {N} levels leaves nothing")
    zeta = spec.zeta(params)
    if zeta == 0:
        if m > 0:
            raise EmptyStateError("the vacuum has no quanta to subtract")
        return docs_state(0.0, params)
    lz, arg = _log_polar(zeta)
    log_mag = np.full(N, -math.inf)
    phase = np.ones(N, dtype=complex)
    for n in range(N - m):
        log_mag[n] = (
            log_comb(2 * N, n + m) - 0.5 * log_comb(2 * N, n)
            + log_factorial(n + m) - log_factorial(n) + (n + m) * lz
        )
        phase[n] = np.exp(1j * (n + m) * arg)
    return _finish(_from_logs(log_mag, phase))


def dpscs_matrix_oracle(spec: DpscsSpec, params: ModelParams) -> StateVector:
    """Apply the truncated lowering matrix ``m`` times to the DOCS and renormalize."""
    if spec.m >= params.N:
        raise EmptyStateError(f"subtracting m={spec.m} quanta from {params.N} levels leaves nothing")
    A, _ = ladder_matrices(params)
    v = docs_state(spec.zeta(params), params).amps
    for _ in range(spec.m):
        v = A.matrix @ v
    if np.linalg.norm(v) < 1e-300:
        raise EmptyStateError("A^m annihilated the state")
    return _finish(v)
