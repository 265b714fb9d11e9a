import math
import warnings

import numpy as np
import pytest

from multidir.constructions import (
    PAULI_X,
    diagonal_gate,
    identity_operator,
    identity_state,
    kicked_ising_gate,
)
from multidir.geometry import build_geometry, parse_geometry
from multidir.statecore import (
    OperatorMatrix,
    PureState,
    apply_local_unitaries,
    apply_site_permutation,
    diagonal_entanglement,
    entanglement_deviation,
    is_absolutely_maximally_entangled,
    is_maximally_entangled,
    is_multidirectional_unitary,
    is_spatially_symmetric,
    is_unitary,
    operator_from_state,
    operator_is_multidirectional_unitary,
    partial_transpose,
    reduced_density_matrix,
    reshuffle,
    state_from_operator,
    swap_operator,
    to_diagonal_convention,
    to_edge_convention,
    von_neumann_entropy,
    weak_spatial_invariance,
)


def product_state(N, config):
    return PureState.from_configs(N, len(config), [config])


def test_identity_square_state():
    sq = build_geometry("square")
    psi = state_from_operator(identity_operator(sq, 2), sq)
    expected = PureState.from_configs(2, 4, [(1, 1, 1, 1), (1, 2, 1, 2), (2, 1, 2, 1), (2, 2, 2, 2)])
    assert psi.allclose(expected, 1e-15)


def test_identity_hexagon_state():
    hx = build_geometry("hexagon")
    psi = state_from_operator(identity_operator(hx, 2), hx)
    assert len(psi.support()) == 8
    assert np.allclose(np.abs(psi.amplitudes[np.abs(psi.amplitudes) > 0]), 2**-1.5)
    assert psi.amplitude((1, 2, 1, 1, 2, 1)) == pytest.approx(2**-1.5)


def test_kicked_ising_state_magnitudes():
    psi = state_from_operator(kicked_ising_gate(), build_geometry("square"))
    assert np.allclose(np.abs(psi.amplitudes), 0.25, atol=1e-15)


@pytest.mark.parametrize("name", ["square", "hexagon", "cube", "polygon:8"])
def test_convention_round_trip(name, rng):
    g = parse_geometry(name)
    d = 2**g.half
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    op = OperatorMatrix(2, g.half, m, "edge")
    back = to_edge_convention(to_diagonal_convention(op, g), g)
    assert np.array_equal(back.matrix, m)


def test_edge_square_is_swap_times_diagonal(rng):
    sq = build_geometry("square")
    m = rng.normal(size=(4, 4))
    u = to_diagonal_convention(OperatorMatrix(2, 2, m, "edge"), sq)
    assert np.allclose(u.matrix, swap_operator(2) @ m)


def test_operator_state_round_trip(rng):
    hx = build_geometry("hexagon")
    q, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
    op = OperatorMatrix(2, 3, q)
    back = operator_from_state(state_from_operator(op, hx), hx)
    assert np.allclose(back.matrix, q, atol=1e-14)


def test_operator_from_state_dual_direction():
    sq = build_geometry("square")
    psi = state_from_operator(kicked_ising_gate(), sq)
    assert is_unitary(operator_from_state(psi, sq, (1, 4)).matrix)
    with pytest.raises(ValueError):
        operator_from_state(psi, sq, (1, 3))


def test_non_unitary_operator_warns():
    sq = build_geometry("square")
    with pytest.warns(UserWarning):
        state_from_operator(OperatorMatrix(2, 2, 2 * np.eye(4)), sq)
    with pytest.raises(ValueError):
        state_from_operator(OperatorMatrix(2, 3, np.eye(8)), sq)


def test_reduced_density_matrix_examples():
    sq = build_geometry("square")
    rho = reduced_density_matrix(identity_state(sq, 2), (1, 2)).matrix
    assert np.allclose(rho, np.eye(4) / 4)
    rho1 = reduced_density_matrix(product_state(2, (1, 1, 1, 1)), (3,)).matrix
    assert np.allclose(rho1, np.diag([1, 0]))
    with pytest.raises(ValueError):
        reduced_density_matrix(identity_state(sq, 2), ())
    with pytest.raises(ValueError):
        reduced_density_matrix(identity_state(sq, 2), (1, 2, 3, 4))


def test_density_matrix_invariants(rng):
    v = rng.normal(size=3**4) + 1j * rng.normal(size=3**4)
    psi = PureState(3, 4, v / np.linalg.norm(v))
    for A in [(1,), (2, 4), (1, 2, 3)]:
        rho = reduced_density_matrix(psi, A)
        assert np.allclose(rho.matrix, rho.matrix.conj().T)
        assert abs(np.trace(rho.matrix) - 1) < 1e-12
        assert rho.eigenvalues.min() > -1e-12
    # Schmidt symmetry
    a = np.sort(reduced_density_matrix(psi, (1, 3)).eigenvalues)
    b = np.sort(reduced_density_matrix(psi, (2, 4)).eigenvalues)
    assert np.allclose(a, b, atol=1e-8)


def test_product_state_deviation():
    psi = product_state(2, (1, 1, 1, 1))
    assert entanglement_deviation(psi, (1, 2)) == pytest.approx(0.75)
    assert not is_maximally_entangled(psi, (1, 2))


def test_entropies():
    sq = build_geometry("square")
    assert von_neumann_entropy(identity_state(sq, 2), (1, 2)) == pytest.approx(math.log(4))
    assert von_neumann_entropy(product_state(2, (1, 1, 1, 1)), (1,)) == 0.0
    bell = PureState.from_configs(2, 2, [(1, 1), (2, 2)])
    assert von_neumann_entropy(bell, (1,)) == pytest.approx(math.log(2))


def test_kicked_ising_not_ame():
    psi = state_from_operator(kicked_ising_gate(), build_geometry("square"))
    assert is_multidirectional_unitary(psi, build_geometry("square")).overall
    assert not is_maximally_entangled(psi, (1, 3))
    assert not is_absolutely_maximally_entangled(psi)


def test_diagonal_phase_state_is_dual_unitary(rng):
    sq = build_geometry("square")
    for N in (2, 3, 4):
        psi = state_from_operator(diagonal_gate(sq, rng.uniform(0, 6, size=(N, N))), sq)
        assert is_maximally_entangled(psi, (1, 2)) and is_maximally_entangled(psi, (1, 4))


def test_multidirectional_report_structure():
    hx = build_geometry("hexagon")
    report = is_multidirectional_unitary(identity_state(hx, 2), hx)
    assert len(report.checks) == 3 and bool(report)
    report = is_multidirectional_unitary(product_state(2, (1,) * 6), hx)
    assert not report and all(c.deviation > 0 for c in report.checks)


def test_reshuffle():
    k = kicked_ising_gate()
    assert np.allclose(reshuffle(reshuffle(k)).matrix, k.matrix)
    assert is_unitary(reshuffle(k).matrix)
    # in the edge convention SWAP is dual unitary and the identity is not
    swap = OperatorMatrix(3, 2, swap_operator(3), "edge")
    assert np.array_equal(reshuffle(swap).matrix, swap.matrix)
    r = reshuffle(OperatorMatrix(3, 2, np.eye(9), "edge")).matrix
    assert not is_unitary(r)
    assert np.allclose(r @ r, 3 * r)  # N times a rank-one projector
    assert np.linalg.matrix_rank(r) == 1
    with pytest.raises(ValueError):
        reshuffle(OperatorMatrix(2, 3, np.eye(8)))


def test_reshuffle_index_rule(rng):
    m = rng.normal(size=(9, 9))
    r = reshuffle(OperatorMatrix(3, 2, m)).tensor
    t = m.reshape(3, 3, 3, 3)
    for a, b, c, d in np.ndindex(3, 3, 3, 3):
        assert r[d, b, c, a] == t[c, d, a, b]


def test_partial_transpose(rng):
    m = rng.normal(size=(8, 8))
    op = OperatorMatrix(2, 3, m)
    assert np.allclose(partial_transpose(op, (1, 2, 3)).matrix, m.T)
    assert np.allclose(partial_transpose(partial_transpose(op, (2,)), (2,)).matrix, m)
    d = OperatorMatrix(2, 3, np.diag(rng.normal(size=8)))
    assert np.array_equal(partial_transpose(d, (1, 3)).matrix, d.matrix)
    with pytest.raises(ValueError):
        partial_transpose(op, (4,))


def test_operator_level_check():
    sq = build_geometry("square")
    assert all(operator_is_multidirectional_unitary(kicked_ising_gate(), sq).values())
    swap = OperatorMatrix(2, 2, swap_operator(2))
    assert operator_is_multidirectional_unitary(swap, sq) == {(1, 2): True, (1, 4): False}


def test_site_permutation_and_local_unitaries():
    sq = build_geometry("square")
    psi = identity_state(sq, 2)
    assert apply_site_permutation(psi, (1, 2, 3, 4)).allclose(psi)
    moved = apply_site_permutation(product_state(2, (1, 2, 2, 2)), (2, 3, 4, 1))
    assert moved.support() == [(2, 1, 2, 2)]
    xx = apply_local_unitaries(psi, [PAULI_X, PAULI_X, np.eye(2), np.eye(2)])
    expected = PureState.from_configs(2, 4, [(2, 2, 1, 1), (2, 1, 1, 2), (1, 2, 2, 1), (1, 1, 2, 2)])
    assert xx.allclose(expected)
    with pytest.raises(ValueError):
        apply_local_unitaries(psi, [np.eye(2) * 2] + [np.eye(2)] * 3)
    with pytest.raises(ValueError):
        apply_site_permutation(psi, (1, 1, 2, 3))


def test_local_unitaries_preserve_entropies(rng):
    hx = build_geometry("hexagon")
    v = rng.normal(size=64) + 1j * rng.normal(size=64)
    psi = PureState(2, 6, v / np.linalg.norm(v))
    qs = [np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0] for _ in range(6)]
    phi = apply_local_unitaries(psi, qs)
    for A in hx.bipartitions:
        assert von_neumann_entropy(phi, A) == pytest.approx(von_neumann_entropy(psi, A), abs=1e-10)


def test_spatial_symmetry():
    sq = build_geometry("square")
    assert is_spatially_symmetric(identity_state(sq, 3), sq)
    assert not is_spatially_symmetric(product_state(2, (1, 2, 2, 2)), sq)


def test_diagonal_entanglement():
    for name in ["square", "hexagon", "cube", "octahedron"]:
        g = parse_geometry(name)
        assert diagonal_entanglement(identity_state(g, 2), g) < 1e-9
    sq = build_geometry("square")
    phases = np.zeros((2, 2))
    phases[0, 1] = np.pi / 2
    psi = state_from_operator(diagonal_gate(sq, phases), sq)
    assert diagonal_entanglement(psi, sq) > 0.1
    tet = build_geometry("tetrahedron")
    with pytest.raises(ValueError):
        diagonal_entanglement(product_state(2, (1, 1, 1, 1)), tet)


def test_weak_invariance_trivial_for_symmetric_state():
    hx = build_geometry("hexagon")
    for r in weak_spatial_invariance(identity_state(hx, 2), hx):
        assert r.invariant and abs(r.witness - 1) < 1e-12
    results = weak_spatial_invariance(identity_state(hx, 3), hx, "monomial")
    assert all(r.invariant for r in results)
    for r in results:
        assert all(p == (1, 2, 3) for p in r.witness.permutations)


def test_weak_invariance_rejects_bad_search():
    sq = build_geometry("square")
    with pytest.raises(ValueError):
        weak_spatial_invariance(identity_state(sq, 2), sq, "continuous")
    with pytest.raises(ValueError):
        weak_spatial_invariance(identity_state(sq, 4), sq, "monomial")


def test_weak_invariance_reports_failure():
    sq = build_geometry("square")
    v = np.zeros(16)
    v[0] = 0.6
    v[1] = 0.8
    psi = PureState(2, 4, v)  # |1111> and |1112> with different weights
    results = weak_spatial_invariance(psi, sq, "global-phase")
    assert not all(r.invariant for r in results)


def test_pure_state_validation():
    with pytest.raises(ValueError):
        PureState(2, 3, np.zeros(7))
    with pytest.raises(ValueError):
        OperatorMatrix(2, 2, np.eye(3))
    with pytest.raises(ValueError):
        OperatorMatrix(2, 2, np.eye(4), "sideways")


def test_no_warning_for_unitary(recwarn):
    warnings.simplefilter("always")
    state_from_operator(kicked_ising_gate(), build_geometry("square"))
    assert len(recwarn) == 0
