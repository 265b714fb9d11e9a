# %% [markdown]
# # Hadamard constructions and graph states
#
# Complex Hadamard matrices give square and cube solutions for any local
# dimension. Qudit graph states with symmetric incidence cover the other
# geometries when N is prime.

# %%
import numpy as np

from multidir import is_multidirectional_unitary, parse_geometry, state_from_operator
from multidir.constructions import (
    closed_form_determinant,
    fourier_hadamard,
    graph_state,
    hadamard_cube,
    hadamard_square,
    symmetric_incidence,
)

# %%
for N in (2, 3, 4, 5):
    sq = parse_geometry("square")
    psi = state_from_operator(hadamard_square(fourier_hadamard(N)), sq)
    print("square", N, bool(is_multidirectional_unitary(psi, sq)))

cube = parse_geometry("cube")
for N in (2, 3):
    psi = state_from_operator(hadamard_cube(fourier_hadamard(N)), cube)
    print("cube", N, bool(is_multidirectional_unitary(psi, cube)))

# %% [markdown]
# For graph states the test reduces to a determinant of the reduced incidence
# matrix being nonzero mod N.

# %%
hexagon = parse_geometry("hexagon")
for params in [(0, 1, 1), (1, 1, 0), (1, 0, 1)]:
    det = closed_form_determinant(hexagon, params)
    for N in (2, 3, 5):
        psi = graph_state(symmetric_incidence(hexagon, params), N)
        print(params, N, det % N != 0, bool(is_multidirectional_unitary(psi, hexagon)))
