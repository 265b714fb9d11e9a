import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from multidir.classical import format_label, parse_compact_notation
from multidir.constructions import diagonal_gate
from multidir.geometry import parse_geometry
from multidir.statecore import (
    PureState,
    apply_site_permutation,
    is_multidirectional_unitary,
    reduced_density_matrix,
    state_from_operator,
    von_neumann_entropy,
)

seeds = st.integers(0, 2**32 - 1)


def random_state(seed, N, K):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=N**K) + 1j * rng.normal(size=N**K)
    return PureState(N, K, v / np.linalg.norm(v))


@settings(max_examples=40, deadline=None)
@given(seed=seeds, N=st.integers(2, 3), K=st.sampled_from([4, 6]), data=st.data())
def test_complementary_reductions_share_spectrum(seed, N, K, data):
    psi = random_state(seed, N, K)
    size = data.draw(st.integers(1, K - 1))
    subset = data.draw(st.permutations(range(1, K + 1)))[:size]
    comp = [j for j in range(1, K + 1) if j not in subset]
    ea = np.sort(reduced_density_matrix(psi, subset).eigenvalues)[::-1]
    eb = np.sort(reduced_density_matrix(psi, comp).eigenvalues)[::-1]
    m = min(len(ea), len(eb))
    assert np.allclose(ea[:m], eb[:m], atol=1e-10)
    assert np.allclose(ea[m:], 0, atol=1e-10) and np.allclose(eb[m:], 0, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, N=st.integers(2, 3), size=st.integers(1, 3))
def test_entropy_bounds(seed, N, size):
    psi = random_state(seed, N, 6)
    s = von_neumann_entropy(psi, range(1, size + 1))
    assert 0.0 <= s <= min(size, 6 - size) * math.log(N) + 1e-10


@settings(max_examples=30, deadline=None)
@given(seed=seeds, perm=st.permutations(range(1, 7)), size=st.integers(1, 3))
def test_site_permutation_relabels_entropy(seed, perm, size):
    psi = random_state(seed, 2, 6)
    moved = apply_site_permutation(psi, perm)
    subset = list(range(1, size + 1))
    image = [perm[j - 1] for j in subset]
    assert math.isclose(von_neumann_entropy(psi, subset), von_neumann_entropy(moved, image), abs_tol=1e-10)


@settings(max_examples=30, deadline=None)
@given(seed=seeds, name=st.sampled_from(["square", "hexagon", "cube", "octahedron"]), N=st.integers(2, 3))
def test_diagonal_gates_are_multidirectional(seed, name, N):
    g = parse_geometry(name)
    phases = np.random.default_rng(seed).uniform(0, 2 * np.pi, size=(N,) * g.half)
    psi = state_from_operator(diagonal_gate(g, phases), g)
    assert is_multidirectional_unitary(psi, g)


@given(
    configs=st.lists(
        st.integers(2, 3).flatmap(lambda h: st.lists(st.integers(1, 9), min_size=2 * h, max_size=2 * h)),
        min_size=1,
        max_size=5,
    ).filter(lambda cs: len({len(c) for c in cs}) == 1)
)
def test_label_round_trip(configs):
    K = len(configs[0])
    text = ",".join(format_label(c) for c in configs)
    assert [tuple(c) for c in parse_compact_notation(text, K)] == [tuple(c) for c in configs]


def test_identity_keyword():
    assert parse_compact_notation("Identity", 4) == []
    assert parse_compact_notation(" [12 34] ", 4) == [(1, 2, 3, 4)]
