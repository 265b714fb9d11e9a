"""Multi-directional unitary operators on symmetric site arrangements."""

from .classical import (
    ClassicalSolution,
    EquivalenceClass,
    Orbit,
    classify,
    complete_with_diagonal_orbits,
    enumerate_solutions,
    expand_compact_notation,
    octahedral_hexagonal_map,
    orbit_of,
    parse_compact_notation,
    solution_to_state,
    strong_equivalence,
    weak_equivalence,
)
from .geometry import Geometry, all_geometry_names, build_geometry, parse_geometry
from .statecore import (
    OperatorMatrix,
    PureState,
    entanglement_deviation,
    is_absolutely_maximally_entangled,
    is_maximally_entangled,
    is_multidirectional_unitary,
    is_spatially_symmetric,
    operator_from_state,
    operator_is_multidirectional_unitary,
    partial_transpose,
    reduced_density_matrix,
    reshuffle,
    state_from_operator,
    von_neumann_entropy,
    weak_spatial_invariance,
)

__version__ = "0.1.0"

__all__ = [
    "ClassicalSolution",
    "EquivalenceClass",
    "Orbit",
    "classify",
    "complete_with_diagonal_orbits",
    "enumerate_solutions",
    "expand_compact_notation",
    "octahedral_hexagonal_map",
    "orbit_of",
    "parse_compact_notation",
    "solution_to_state",
    "strong_equivalence",
    "weak_equivalence",
    "Geometry",
    "all_geometry_names",
    "build_geometry",
    "parse_geometry",
    "OperatorMatrix",
    "PureState",
    "entanglement_deviation",
    "is_absolutely_maximally_entangled",
    "is_maximally_entangled",
    "is_multidirectional_unitary",
    "is_spatially_symmetric",
    "operator_from_state",
    "operator_is_multidirectional_unitary",
    "partial_transpose",
    "reduced_density_matrix",
    "reshuffle",
    "state_from_operator",
    "von_neumann_entropy",
    "weak_spatial_invariance",
]
