"""
Number statistics and the deformed position/momentum observables.

Position and momentum use the second-order algebraic
representation in the deformed ladder operators, with number-dependent
coefficient functions ``f_ij(n)``, ``g_ij(n)`` evaluated for ``k = 2N + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UndefinedStatisticError
from .hilbert import DenseOperator, ModelParams, StateVector, ladder_matrices

__all__ = [
    "NumberStats", "XpCoefficients", "number_stats", "pn_distribution",
    "xp_coefficients", "assemble_xd_pd", "build_xd_pd", "momentum_hermiticity_report",
    "expectation", "dispersions", "commutator_expectation", "uncertainty_product",
]

MOMENTUM_ORDERINGS = ("hermitian", "literal")


@dataclass(frozen=True)
class NumberStats:
    mean: float
    variance: float
    normalized_variance: float


def pn_distribution(psi: StateVector) -> np.ndarray:
    """Occupation probabilities ``|<n|psi>|^2``."""
    return psi.probabilities


def number_stats(psi: StateVector) -> NumberStats:
    """Mean, variance and normalized variance (Mandel ratio) of the number operator.

    A normalized variance above 1 is super-Poissonian, below 1 sub-Poissonian.
    """
    p = pn_distribution(psi)
    n = np.arange(psi.dim)
    mean = float(n @ p)
    if mean < 1e-14:
        raise UndefinedStatisticError("normalized variance is undefined for <n> = 0")
    var = max(float((n * n) @ p - mean**2), 0.0)
    return NumberStats(mean, var, var / mean)


@dataclass(frozen=True)
class XpCoefficients:
    f00: np.ndarray
    f10: np.ndarray
    f01: np.ndarray
    f20: np.ndarray
    f02: np.ndarray
    g10: np.ndarray
    g01: np.ndarray
    g20: np.ndarray
    g02: np.ndarray
    f0: float
    euler_gamma: float = float(np.euler_gamma)


def xp_coefficients(params: ModelParams) -> XpCoefficients:
    """Coefficient functions of ``n`` for levels ``0..N-1``.

    Examples
    --------
    >>> c = xp_coefficients(ModelParams(10))
    >>> round(c.f0, 6), round(float(c.f00[0]), 6)
    (0.073998, 0.339103)
    """
    k = params.k
    n = np.arange(params.N, dtype=float)
    harmonic = sum(1.0 / p for p in range(1, k - 1))
    f0 = math.log(k) - (harmonic - np.euler_gamma)

    with np.errstate(divide="ignore"):
        log_term = np.log((k - 2) * (k - n - 1) / ((k - 1 - 2 * n) * (k - 2 * n)))
    f00 = math.sqrt(k) * (f0 + np.where(n == 0, 0.0, log_term))

    f10 = math.sqrt((k - 1) / k) * (1 + n / (k - n))
    shrink = (1 - (n - 1) / k) * (1 - n / k)
    f20 = (k - 1) / (2 * k * math.sqrt(k)) * (-1 / shrink)
    g10 = math.sqrt((k - 1) / k) * (k - 2 * n) / (k - n)
    g20 = -(k - 1) / (k * math.sqrt(k)) * ((k - (2 * n - 1)) / (k * shrink))
    return XpCoefficients(
        f00=f00, f10=f10, f01=f10.copy(), f20=f20, f02=f20.copy(),
        g10=g10, g01=-g10, g20=g20, g02=-g20, f0=f0,
    )


def assemble_xd_pd(coeffs: XpCoefficients, A: np.ndarray, Omega: float = 1.0,
                   momentum_ordering: str = "hermitian") -> tuple[np.ndarray, np.ndarray]:
    """Raw (unsymmetrized) position and momentum matrices.

    A coefficient written to the left of a ladder operator multiplies rows,
    one written to the right multiplies columns.  ``momentum_ordering`` picks
    the first-order momentum term: ``"hermitian"`` uses ``g10 A^dagger + A g01``,
    ``"literal"`` uses ``g01 A^dagger + A g01``, whose
    first-order part is anti-hermitian and cancels on symmetrization.
    """
    if momentum_ordering not in MOMENTUM_ORDERINGS:
        raise ParameterError(f"momentum_ordering must be one of {MOMENTUM_ORDERINGS}")
    A = np.asarray(A, dtype=float)
    Ad = A.T
    A2, Ad2 = A @ A, Ad @ Ad
    D = np.diag
    c = coeffs
    X = D(c.f00) + D(c.f10) @ Ad + A @ D(c.f01) + D(c.f20) @ Ad2 + A2 @ D(c.f02)
    raise_coeff = c.g10 if momentum_ordering == "hermitian" else c.g01
    P = 1j * (D(raise_coeff) @ Ad + A @ D(c.g01) + D(c.g20) @ Ad2 + A2 @ D(c.g02))
    return X / math.sqrt(2 * Omega), P * math.sqrt(Omega / 2)


def _hermitize(M: np.ndarray) -> DenseOperator:
    dev = float(np.abs(M - M.conj().T).max())
    return DenseOperator(0.5 * (M + M.conj().T), hermitian=True, herm_deviation=dev)


def build_xd_pd(params: ModelParams, momentum_ordering: str = "hermitian"
                ) -> tuple[DenseOperator, DenseOperator]:
    """Deformed position and momentum operators, symmetrized to be hermitian.

    The pre-symmetrization deviation of each matrix is kept in
    ``herm_deviation``.  With the default ordering both deviations are zero;
    ``momentum_ordering="literal"`` is available for comparison only.
    """
    A, _ = ladder_matrices(params)
    X, P = assemble_xd_pd(xp_coefficients(params), A.matrix.real, params.Omega,
                          momentum_ordering)
    return _hermitize(X), _hermitize(P)


def momentum_hermiticity_report(params: ModelParams) -> dict[str, float]:
    """Pre-symmetrization ``max|P - P^dagger|`` for each momentum ordering."""
    A, _ = ladder_matrices(params)
    coeffs = xp_coefficients(params)
    out = {}
    for ordering in MOMENTUM_ORDERINGS:
        _, P = assemble_xd_pd(coeffs, A.matrix.real, params.Omega, ordering)
        out[ordering] = float(np.abs(P - P.conj().T).max())
    return out


def expectation(op: DenseOperator, psi: StateVector) -> complex:
    if op.dim != psi.dim:
        raise ParameterError(f"dimension mismatch: operator {op.dim}, state {psi.dim}")
    value = complex(np.vdot(psi.amps, op.matrix @ psi.amps))
    return value.real if op.hermitian else value


def dispersions(psi: StateVector, Xd: DenseOperator, Pd: DenseOperator) -> tuple[float, float]:
    """Variances of position and momentum, clamped at zero."""
    out = []
    for op in (Xd, Pd):
        v = op.matrix @ psi.amps
        second = float(np.vdot(v, v).real)
        first = float(np.vdot(psi.amps, v).real)
        out.append(max(second - first**2, 0.0))
    return out[0], out[1]


def commutator_expectation(psi: StateVector, Xd: DenseOperator, Pd: DenseOperator) -> complex:
    C = Xd.matrix @ Pd.matrix - Pd.matrix @ Xd.matrix
    return complex(np.vdot(psi.amps, C @ psi.amps))


def uncertainty_product(psi: StateVector, Xd: DenseOperator, Pd: DenseOperator) -> float:
    """Normalized product ``4 var_x var_p / |<[x, p]>|^2``; at least 1 for any state."""
    c = abs(commutator_expectation(psi, Xd, Pd))
    if c < 1e-12:
        raise UndefinedStatisticError("commutator expectation vanishes")
    var_x, var_p = dispersions(psi, Xd, Pd)
    return 4.0 * var_x * var_p / c**2
