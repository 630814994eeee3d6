"""Exact time evolution under the diagonal deformed Hamiltonian."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .hilbert import DenseOperator, ModelParams, StateVector, energies

__all__ = ["TrajectoryPoint", "Trajectory", "evolve", "trajectory", "revival_period"]


class TrajectoryPoint(NamedTuple):
    t: float
    x_mean: float
    p_mean: float
    var_x: float
    var_p: float
    delta_xp: float
    norm_err: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Column arrays of :class:`TrajectoryPoint`; indexing returns one point."""

    t: np.ndarray
    x_mean: np.ndarray
    p_mean: np.ndarray
    var_x: np.ndarray
    var_p: np.ndarray
    delta_xp: np.ndarray
    norm_err: np.ndarray

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i) -> TrajectoryPoint:
        return TrajectoryPoint(*(float(getattr(self, f)[i]) for f in TrajectoryPoint._fields))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def columns(self) -> dict[str, np.ndarray]:
        return {f: getattr(self, f) for f in TrajectoryPoint._fields}


def revival_period(params: ModelParams) -> float:
    """``2 pi k / Omega``: every level's phase, relative to the ground state, is a whole turn."""
    return 2 * math.pi * params.k / params.Omega


def evolve(psi0: StateVector, t: float, params: ModelParams) -> StateVector:
    if psi0.dim != params.N:
        raise ParameterError(f"state has {psi0.dim} levels, model has {params.N}")
    return StateVector(np.exp(-1j * energies(params) * t) * psi0.amps)


def trajectory(psi0: StateVector, t_grid, params: ModelParams,
               Xd: DenseOperator, Pd: DenseOperator) -> Trajectory:
    """Means, variances and normalized uncertainty product along ``t_grid``.

    Each sample is evolved directly from ``psi0`` with phases computed from the
    absolute time, so there is no accumulation of step errors.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ParameterError("time grid must be a non-empty 1-d array")
    if np.any(np.diff(t) <= 0):
        raise ParameterError("time grid must be strictly increasing")
    if psi0.dim != params.N:
        raise ParameterError(f"state has {psi0.dim} levels, model has {params.N}")

    psi = np.exp(-1j * np.outer(t, energies(params))) * psi0.amps
    X, P = Xd.matrix, Pd.matrix
    C = X @ P - P @ X

    def moments(M):
        Mpsi = psi @ M.T
        first = np.einsum("ti,ti->t", psi.conj(), Mpsi).real
        second = np.einsum("ti,ti->t", Mpsi.conj(), Mpsi).real
        return first, np.maximum(second - first**2, 0.0)

    x_mean, var_x = moments(X)
    p_mean, var_p = moments(P)
    comm = np.abs(np.einsum("ti,ti->t", psi.conj(), psi @ C.T))
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = np.where(comm >= 1e-12, 4 * var_x * var_p / comm**2, np.nan)
    norm_err = np.abs(np.linalg.norm(psi, axis=1) - 1.0)
    return Trajectory(t, x_mean, p_mean, var_x, var_p, delta, norm_err)
