"""Short-depth VQE trial wavefunctions from selected Pauli terms.

Builds two trial-state families (a drive/problem alternating family and
an imaginary-time-inspired family) from individual Pauli terms of a
qubit Hamiltonian, greedily selects the terms that lower the optimized
variational energy fastest, and compiles the result to elementary gate
circuits with deterministic gate counts.
"""

from .ansatz import AnsatzSpec, Family, build_state, parameter_count, zero_parameters
from .compiler import compile_ansatz, compile_pauli_exp, simulate_circuit
from .fixtures import load_fixture
from .io import load_hamiltonian, save_hamiltonian
from .oracle import exact_ground, fig3_amplitudes, imaginary_time_evolve
from .pauli import (
    NotSubstitutableError,
    PauliParseError,
    PauliString,
    QubitHamiltonian,
    WeightedTerm,
    is_substitutable,
    parse_pauli,
    render_pauli,
    weight,
    xy_substitute,
)
from .selection import SelectionConfig, eligible_candidates, greedy_select
from .statevector import (
    StateVector,
    apply_pauli_exp,
    apply_z_rotation,
    expectation,
    prepare_basis_state,
)
from .vqe import OptimizerConfig, gradient, hf_energy, minimize

__version__ = "0.1.0"

__all__ = [
    "AnsatzSpec",
    "Family",
    "NotSubstitutableError",
    "OptimizerConfig",
    "PauliParseError",
    "PauliString",
    "QubitHamiltonian",
    "SelectionConfig",
    "StateVector",
    "WeightedTerm",
    "apply_pauli_exp",
    "apply_z_rotation",
    "build_state",
    "compile_ansatz",
    "compile_pauli_exp",
    "eligible_candidates",
    "exact_ground",
    "expectation",
    "fig3_amplitudes",
    "gradient",
    "greedy_select",
    "hf_energy",
    "imaginary_time_evolve",
    "is_substitutable",
    "load_fixture",
    "load_hamiltonian",
    "minimize",
    "parameter_count",
    "parse_pauli",
    "prepare_basis_state",
    "render_pauli",
    "save_hamiltonian",
    "simulate_circuit",
    "weight",
    "xy_substitute",
    "zero_parameters",
    "__version__",
]
