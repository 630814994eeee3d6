import math
from fractions import Fraction

import numpy as np
import pytest

from morse_squeezed import (
    DenseOperator, ModelParams, ParameterError, StateVector, apply, basis_state,
    deformation_f2, energies, energy, hamiltonian, ladder_matrices, make_params,
)
from morse_squeezed.hilbert import fix_phase, ladder_band, log_comb, overlap


def test_make_params_n10():
    p = make_params(10, 1.0)
    assert p.k == 21
    assert p.chi_a == pytest.approx(1 / 21, abs=0)
    assert p.chi_a == pytest.approx(0.047619, abs=1e-6)
    assert p.k * p.chi_a == pytest.approx(1.0, abs=1e-15)


def test_make_params_n2():
    p = make_params(2)
    assert p.chi_a == pytest.approx(0.2)
    assert p.k == 5


@pytest.mark.parametrize("N, Omega", [(1, 1.0), (0, 1.0), (10, 0.0), (10, -1.0), (2.5, 1.0)])
def test_make_params_rejects(N, Omega):
    with pytest.raises(ParameterError):
        make_params(N, Omega)


@pytest.mark.parametrize("n, expected", [
    (0, Fraction(1)), (1, Fraction(20, 21)), (10, Fraction(11, 21)),
])
def test_deformation_f2(params, n, expected):
    assert deformation_f2(n, params) == pytest.approx(float(expected), abs=1e-15)


def test_deformation_f2_positive_on_range(params):
    values = [deformation_f2(n, params) for n in range(params.N + 1)]
    assert min(values) >= 1 / params.k - 1e-15


@pytest.mark.parametrize("n", [-1, 11, 3.5])
def test_deformation_f2_domain(params, n):
    with pytest.raises(ParameterError):
        deformation_f2(n, params)


def test_ladder_entries(params):
    A, Ad = ladder_matrices(params)
    assert A.matrix[0, 1].real == pytest.approx(math.sqrt(20 / 21), abs=1e-15)
    assert A.matrix[0, 1].real == pytest.approx(0.975900, abs=1e-6)
    assert A.matrix[8, 9].real == pytest.approx(math.sqrt(9 * 12 / 21), abs=1e-14)
    assert A.matrix[8, 9].real == pytest.approx(2.267787, abs=1e-6)
    assert not A.hermitian and not Ad.hermitian
    np.testing.assert_array_equal(Ad.matrix, A.matrix.conj().T)
    # raising out of the top level is truncated
    assert np.all(Ad.matrix[:, -1] == 0)


def test_ladder_band_only(params):
    A, _ = ladder_matrices(params)
    band = np.diag(A.matrix, 1).real
    assert np.all(band > 0)
    off = A.matrix.copy()
    off[np.arange(params.N - 1), np.arange(1, params.N)] = 0
    assert np.all(off == 0)


def test_harmonic_limit():
    A = ladder_band(8, lambda n: 1.0)
    np.testing.assert_allclose(np.diag(A, 1), np.sqrt(np.arange(1, 8)), rtol=0, atol=1e-15)


def test_annihilates_vacuum(params):
    A, _ = ladder_matrices(params)
    np.testing.assert_array_equal(apply(A, basis_state(0, params)), np.zeros(params.N))


def test_lowers_first_excited(params):
    A, _ = ladder_matrices(params)
    out = apply(A, basis_state(1, params))
    expected = np.zeros(params.N)
    expected[0] = math.sqrt(20 / 21)
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_identity_apply(params):
    rng = np.random.default_rng(0)
    v = rng.normal(size=params.N) + 1j * rng.normal(size=params.N)
    psi = StateVector(v / np.linalg.norm(v))
    np.testing.assert_array_equal(apply(DenseOperator(np.eye(params.N), hermitian=True), psi), psi.amps)


def test_apply_dim_mismatch(params):
    with pytest.raises(ParameterError):
        apply(DenseOperator(np.eye(3)), basis_state(0, params))


def test_energy_examples(params):
    assert energy(0, params) == pytest.approx(0.5 - 1 / 42, abs=1e-15)
    assert energy(0, params) == pytest.approx(0.476190, abs=1e-6)
    assert energy(1, params) == pytest.approx(1.5 - 2.5 / 21, abs=1e-15)
    assert energy(1, params) == pytest.approx(1.380952, abs=1e-6)


def test_energy_matches_morse_form(params):
    # hbar w (n + 1/2) - hbar w (n + 1/2)^2 / (2N + 1), up to the constant -chi/4
    for n in range(params.N):
        morse = (n + 0.5) - (n + 0.5) ** 2 / (2 * params.N + 1)
        assert energy(n, params) == pytest.approx(morse - params.chi_a / 4, abs=1e-14)


def test_energy_gaps_compress(params):
    E = energies(params)
    gaps = np.diff(E)
    n = np.arange(params.N - 1)
    np.testing.assert_allclose(gaps, 1 - params.chi_a * (2 * n + 2), atol=1e-14)
    assert np.all(gaps > 0) and np.all(np.diff(gaps) < 0)
    assert 1 - params.chi_a * 2 * params.N > 0


@pytest.mark.parametrize("n", [-1, 10])
def test_energy_domain(params, n):
    with pytest.raises(ParameterError):
        energy(n, params)


@pytest.mark.parametrize("N", [2, 5, 10, 23])
def test_commutator_identity(N):
    p = ModelParams(N)
    A, Ad = ladder_matrices(p)
    C = (A.matrix @ Ad.matrix - Ad.matrix @ A.matrix).real
    assert np.all(C == np.diag(np.diag(C)))
    n = np.arange(N - 1)
    np.testing.assert_allclose(np.diag(C)[: N - 1], (2 * N - 2 * n) / (2 * N + 1), rtol=0, atol=1e-14)
    # top level: the A A^dagger contribution is cut, leaving -(N-1) f^2(N-1)
    assert C[N - 1, N - 1] == pytest.approx(-(N - 1) * (1 - (N - 1) / (2 * N + 1)), abs=1e-13)


@pytest.mark.parametrize("N", [2, 5, 10, 23])
def test_hamiltonian_interior(N):
    p = ModelParams(N, 1.7)
    H = hamiltonian(p).matrix.real
    assert np.all(H == np.diag(np.diag(H)))
    np.testing.assert_allclose(np.diag(H)[: N - 1], energies(p)[: N - 1], rtol=0, atol=1e-14 * 1.7 * N)


def test_hermitian_flag_enforced():
    with pytest.raises(ParameterError):
        DenseOperator(np.array([[0, 1], [0, 0]]), hermitian=True)


def test_state_vector_readonly(params):
    psi = basis_state(3, params)
    with pytest.raises(ValueError):
        psi.amps[0] = 1


def test_fix_phase_first_nonzero():
    v = fix_phase(np.array([0, 1e-20, -2j, 1]))
    assert v[2].real > 0 and v[2].imag == 0
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-15)


def test_log_comb_against_exact():
    for n in range(0, 41):
        for r in range(0, n + 1):
            assert log_comb(n, r) == pytest.approx(math.log(math.comb(n, r)), abs=1e-12)
    assert log_comb(5, 6) == -math.inf
    # far beyond float range of the factorials themselves
    assert log_comb(2000, 1000) == pytest.approx(math.log(math.comb(2000, 1000)), rel=1e-13)


def test_overlap_phase_blind(params):
    psi = basis_state(2, params)
    assert overlap(psi, StateVector(1j * psi.amps)) == pytest.approx(1.0)
