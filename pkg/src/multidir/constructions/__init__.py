"""Explicit multi-directional unitary constructions."""

from .basic import (
    PAULI_X,
    PAULI_Z,
    cartan_core,
    cartan_dual_unitary,
    diagonal_gate,
    hexagonal_qubit_diagonal,
    identity_operator,
    identity_state,
    is_symmetric_phase_table,
    kicked_ising_gate,
    random_su2,
    self_dual_family,
    symmetrize_phase_table,
)
from .graphs import (
    PARAMETER_COUNT,
    IncidenceGraph,
    closed_form_determinant,
    graph_state,
    graph_state_exponents,
    int_determinant,
    is_prime,
    reduced_incidence_determinant,
    symmetric_incidence,
)
from .hadamard import (
    HADAMARD_F2I,
    fourier_hadamard,
    hadamard_cube,
    hadamard_equivalent,
    hadamard_square,
    hadamard_square_factorized,
    is_complex_hadamard,
)

__all__ = [
    "PAULI_X",
    "PAULI_Z",
    "cartan_core",
    "cartan_dual_unitary",
    "diagonal_gate",
    "hexagonal_qubit_diagonal",
    "identity_operator",
    "identity_state",
    "is_symmetric_phase_table",
    "kicked_ising_gate",
    "random_su2",
    "self_dual_family",
    "symmetrize_phase_table",
    "PARAMETER_COUNT",
    "IncidenceGraph",
    "closed_form_determinant",
    "graph_state",
    "graph_state_exponents",
    "int_determinant",
    "is_prime",
    "reduced_incidence_determinant",
    "symmetric_incidence",
    "HADAMARD_F2I",
    "fourier_hadamard",
    "hadamard_cube",
    "hadamard_equivalent",
    "hadamard_square",
    "hadamard_square_factorized",
    "is_complex_hadamard",
]
