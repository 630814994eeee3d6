import math

import numpy as np
import pytest
from scipy.linalg import expm

from morse_squeezed import (
    DpscsSpec, ModelParams, ParameterError, StateVector, basis_state, dpscs_state, energies,
    evolve, hamiltonian, loqcs_closed_form, overlap, revival_period, trajectory,
)
from morse_squeezed.hilbert import ladder_band


def expm_propagator(params, t):
    """exp(-i H t) from the ladder-operator Hamiltonian on one extra level, restricted to N."""
    N = params.N
    A = ladder_band(N + 1, lambda n: 1 - params.chi_a * n)
    H = 0.5 * params.Omega * (A.T @ A + A @ A.T)
    return expm(-1j * H * t)[:N, :N]


@pytest.fixture
def psi0(params):
    return loqcs_closed_form(0.0, 0.3, params)


def test_evolve_t0(params, psi0):
    np.testing.assert_array_equal(evolve(psi0, 0.0, params).amps, psi0.amps)


@pytest.mark.parametrize("t", [0.7, 13.0, 150.0])
def test_evolve_matches_matrix_exponential(params, psi0, t):
    U = expm_propagator(params, t)
    np.testing.assert_allclose(evolve(psi0, t, params).amps, U @ psi0.amps, atol=1e-11)


def test_number_state_stationary(params):
    psi = basis_state(4, params)
    for t in (1.0, 33.3):
        assert overlap(psi, evolve(psi, t, params)) == pytest.approx(1.0, abs=1e-15)


def test_revival_period_integer_spectrum(params):
    T = revival_period(params)
    assert T == pytest.approx(42 * math.pi)
    k = params.k
    scaled = (energies(params) - energies(params)[0]) * k
    n = np.arange(params.N)
    np.testing.assert_allclose(scaled, 21 * n - n * (n + 1), atol=1e-12)


@pytest.mark.parametrize("N, Omega", [(10, 1.0), (7, 2.5)])
def test_exact_revival(N, Omega):
    p = ModelParams(N, Omega)
    rng = np.random.default_rng(N)
    v = rng.normal(size=N) + 1j * rng.normal(size=N)
    psi = StateVector(v / np.linalg.norm(v))
    fid = abs(np.vdot(psi.amps, evolve(psi, revival_period(p), p).amps))
    assert fid >= 1 - 1e-12


def test_time_reversal(params, psi0):
    back = evolve(evolve(psi0, 17.3, params), -17.3, params)
    assert np.abs(back.amps - psi0.amps).max() <= 1e-12


def test_trajectory_invariants(params, xp, psi0):
    t = np.linspace(0, revival_period(params), 500)
    traj = trajectory(psi0, t, params, *xp)
    assert len(traj) == 500
    assert traj.norm_err.max() <= 1e-12
    assert np.nanmin(traj.delta_xp) >= 1 - 1e-9
    H = hamiltonian(params).matrix
    E = energies(params)
    for ti in t[::50]:
        psi = evolve(psi0, ti, params)
        assert float(E @ psi.probabilities) == pytest.approx(float(E @ psi0.probabilities), abs=1e-12)
        np.testing.assert_allclose(psi.probabilities, psi0.probabilities, atol=1e-15)
    # the truncated ladder Hamiltonian is also conserved (it is diagonal)
    assert np.all(H == np.diag(np.diag(H)))


def test_trajectory_point_matches_direct(params, xp, psi0):
    from morse_squeezed import dispersions, expectation, uncertainty_product

    traj = trajectory(psi0, [0.0, 5.0], params, *xp)
    pt = traj[1]
    psi = evolve(psi0, 5.0, params)
    assert pt.x_mean == pytest.approx(expectation(xp[0], psi), abs=1e-13)
    assert pt.p_mean == pytest.approx(expectation(xp[1], psi), abs=1e-13)
    assert (pt.var_x, pt.var_p) == pytest.approx(dispersions(psi, *xp), abs=1e-13)
    assert pt.delta_xp == pytest.approx(uncertainty_product(psi, *xp), rel=1e-12)
    assert [p.t for p in traj] == [0.0, 5.0]


def test_trajectory_returns_at_revival(params, xp):
    psi = loqcs_closed_form(0.0, 0.1, params)
    traj = trajectory(psi, [0.0, 42 * math.pi], params, *xp)
    a, b = traj[0], traj[1]
    for field in ("x_mean", "p_mean", "var_x", "var_p", "delta_xp"):
        assert getattr(b, field) == pytest.approx(getattr(a, field), abs=1e-9)


def test_trajectory_localized_small_gamma(params, xp):
    t = np.linspace(0, 42 * math.pi, 2000)
    traj = trajectory(loqcs_closed_form(0.0, 0.1, params), t, params, *xp)
    assert traj.var_x.max() < 1.0 and traj.var_p.max() < 1.0


def test_dpscs_localization_ordering(params, xp):
    t = np.linspace(0, 42 * math.pi, 2000)
    peak = {m: trajectory(dpscs_state(DpscsSpec(1.0, 0.0, m), params), t, params, *xp).delta_xp.max()
            for m in (0, 8)}
    assert peak[8] < peak[0]


@pytest.mark.parametrize("grid", [[], [1.0, 1.0], [2.0, 1.0]])
def test_trajectory_grid_errors(params, xp, psi0, grid):
    with pytest.raises(ParameterError):
        trajectory(psi0, grid, params, *xp)
