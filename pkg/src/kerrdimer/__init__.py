"""Steady-state quantum correlations of two driven, dissipative Kerr cavities
coupled by single- or two-photon exchange."""

from .fock import (
    DensityMatrix,
    annihilation,
    coherent_state,
    creation,
    eigh_hermitian,
    identity,
    lift,
    number,
    partial_trace,
    partial_transpose,
)
from .model import ModelParams, SpinOperators, build_hamiltonian, build_spin_operators
from .liouvillian import build_for_params, build_liouvillian, unvectorize, vectorize
from .steady import SteadyStateSolution, solve_evolve, solve_nullspace
from .observables import (
    ObservableRecord,
    evaluate,
    g2_zero,
    i_concurrence,
    impurity,
    log_negativity,
    mode_entanglement,
    spin_squeezing_witness,
    von_neumann_entropy,
)
from .sweep import GridSpec, SweepConfig, SweepResult, emit, run_sweep, solve_point

__all__ = [
    "DensityMatrix", "annihilation", "coherent_state", "creation",
    "eigh_hermitian", "identity", "lift", "number", "partial_trace",
    "partial_transpose", "ModelParams", "SpinOperators", "build_hamiltonian",
    "build_spin_operators", "build_for_params", "build_liouvillian",
    "unvectorize", "vectorize", "SteadyStateSolution", "solve_evolve",
    "solve_nullspace", "ObservableRecord", "evaluate", "g2_zero",
    "i_concurrence", "impurity", "log_negativity", "mode_entanglement",
    "spin_squeezing_witness", "von_neumann_entropy", "GridSpec", "SweepConfig",
    "SweepResult", "emit", "run_sweep", "solve_point",
]

__version__ = "0.1.0"
