"""Morse-like f-deformed oscillator: squeezed coherent states on a truncated Fock space."""
from .errors import (
    EmptyStateError, MorseError, OutOfRegimeError, ParameterError, RegimeWarning,
    UndefinedStatisticError,
)
from .hilbert import (
    DenseOperator, ModelParams, StateVector, apply, basis_state, deformation_f2, energies,
    energy, hamiltonian, ladder_matrices, make_params, number_operator, overlap,
)
from .states import (
    DpscsSpec, LoqcsMethod, LoqcsSpec, build_loqcs, docs_state, dpscs_matrix_oracle,
    dpscs_state, lattice_alpha, loqcs_closed_form, loqcs_eigen_oracle, loqcs_index,
    loqcs_recursion, loqcs_residual, loqcs_spectrum, zeta_from_alpha,
)
from .observables import (
    NumberStats, XpCoefficients, build_xd_pd, commutator_expectation, dispersions,
    expectation, momentum_hermiticity_report, number_stats, pn_distribution,
    uncertainty_product, xp_coefficients,
)
from .dynamics import Trajectory, TrajectoryPoint, evolve, revival_period, trajectory

__version__ = "0.1.0"
