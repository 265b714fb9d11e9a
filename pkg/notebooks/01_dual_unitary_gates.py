# %% [markdown]
# # Dual-unitary two-qubit gates
#
# A four-site square state is built from a 4x4 gate. We check every allowed
# cut of the square and look at how the kicked Ising gate sits inside the
# Cartan family.

# %%
import numpy as np

from multidir import is_multidirectional_unitary, parse_geometry, reshuffle, state_from_operator
from multidir.constructions import cartan_dual_unitary, kicked_ising_gate
from multidir.statecore import is_unitary, von_neumann_entropy

square = parse_geometry("square")
print(square.bipartitions)

# %% [markdown]
# The kicked Ising gate is unitary, and so is its reshuffle.

# %%
u = kicked_ising_gate()
print(is_unitary(u.matrix), is_unitary(reshuffle(u).matrix))
psi = state_from_operator(u, square)
for cut in square.bipartitions:
    print(cut, round(von_neumann_entropy(psi, cut), 12), np.log(4))

# %% [markdown]
# Random members of the Cartan family all pass the square test.

# %%
rng = np.random.default_rng(7)
ok = [
    bool(is_multidirectional_unitary(state_from_operator(cartan_dual_unitary(rng.uniform(0, np.pi), rng.uniform(0, np.pi)), square), square))
    for _ in range(20)
]
print(all(ok))
