# %% [markdown]
# # Classical solutions
#
# Permutation-type solutions are built from orbits of basis configurations
# under the symmetry group. We enumerate them by exact cover and sort them
# into equivalence classes.

# %%
from multidir import classify, enumerate_solutions, octahedral_hexagonal_map, parse_geometry

square = parse_geometry("square")
for N in (2, 3, 4):
    print(N, len(enumerate_solutions(square, N)), len(classify(square, N)))

# %%
for cls in classify(square, 4):
    print(cls.representative.notation, len(cls.members))

# %% [markdown]
# Octahedral and hexagonal classes at N=3 match one to one.

# %%
octa = parse_geometry("octahedron")
for cls in classify(octa, 3):
    print(cls.representative.notation)
print(octahedral_hexagonal_map(3))
