"""Identity, diagonal-phase and qubit gates."""

from __future__ import annotations

import itertools

import numpy as np

from ..geometry import Geometry
from ..statecore import OperatorMatrix, PureState, is_unitary

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def identity_state(geometry: Geometry, N: int) -> PureState:
    """Product of Bell pairs on the diagonals, ``psi(a; a) = N**(-K/4)``."""
    if not geometry.diagonals:
        raise ValueError(f"{geometry.name} has no diagonals; the identity construction does not apply")
    h = geometry.half
    eye = np.eye(N**h).reshape((N,) * (2 * h))
    return PureState(N, geometry.K, eye.reshape(-1) / N ** (geometry.K / 4))


def identity_operator(geometry: Geometry, N: int) -> OperatorMatrix:
    return OperatorMatrix(N, geometry.half, np.eye(N**geometry.half))


def diagonal_gate(geometry: Geometry, phases: np.ndarray) -> OperatorMatrix:
    """Diagonal operator ``D[a, a] = exp(i phases[a])`` over input tuples ``a``.

    ``phases`` is a real array of shape ``(N,) * (K/2)``.
    """
    phases = np.asarray(phases, dtype=float)
    h = geometry.half
    if phases.ndim != h or len(set(phases.shape)) != 1:
        raise ValueError(f"phase table must have shape (N,)*{h}, got {phases.shape}")
    N = phases.shape[0]
    return OperatorMatrix(N, h, np.diag(np.exp(1j * phases.reshape(-1))))


def is_symmetric_phase_table(geometry: Geometry, phases: np.ndarray, tol: float = 1e-12) -> bool:
    """Invariance of the phase table under the group's action on diagonals.

    A group element permutes the diagonals (and may swap their endpoints,
    which leaves a diagonal tuple ``(a; a)`` unchanged), so the table must be
    invariant under the induced permutations of its axes.
    """
    phases = np.asarray(phases)
    h = geometry.half
    for g in geometry.generators:
        axes = [0] * h
        for j in range(h):
            target = g[j]  # image site of the first endpoint of diagonal j
            axes[(target - 1) % h] = j
        if np.max(np.abs(np.transpose(phases, axes) - phases)) > tol:
            return False
    return True


def symmetrize_phase_table(geometry: Geometry, phases: np.ndarray) -> np.ndarray:
    """Average a phase table over the permutations of diagonals the group induces."""
    phases = np.asarray(phases, dtype=float)
    h = geometry.half
    induced = set()
    for g in geometry.symmetry_group:
        axes = [0] * h
        for j in range(h):
            axes[(g[j] - 1) % h] = j
        induced.add(tuple(axes))
    return sum(np.transpose(phases, a) for a in sorted(induced)) / len(induced)


def hexagonal_qubit_diagonal(gamma: float, delta: float) -> OperatorMatrix:
    """``exp[i(gamma (Z1Z2 + Z2Z3 + Z1Z3) + delta Z1Z2Z3)]`` on three qubits."""
    z = np.array([1.0, -1.0])
    diag = []
    for a, b, c in itertools.product(range(2), repeat=3):
        za, zb, zc = z[a], z[b], z[c]
        diag.append(np.exp(1j * (gamma * (za * zb + zb * zc + za * zc) + delta * za * zb * zc)))
    return OperatorMatrix(2, 3, np.diag(diag))


def _check_su2(s: np.ndarray, tol: float) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if s.shape != (2, 2) or not is_unitary(s, tol) or abs(np.linalg.det(s) - 1) > tol:
        raise ValueError("one-site factor is not in SU(2)")
    return s


def cartan_core(alpha: float) -> np.ndarray:
    """``exp(i alpha Z1 Z2) = diag(e^{ia}, e^{-ia}, e^{-ia}, e^{ia})``."""
    return np.diag(np.exp(1j * alpha * np.array([1, -1, -1, 1])))


def cartan_dual_unitary(phi, alpha, S1=None, S2=None, S3=None, S4=None, tol: float = 1e-9) -> OperatorMatrix:
    """Two-qubit dual unitary ``e^{i phi} (S1 x S2) D(alpha) (S3 x S4)`` (diagonal convention)."""
    S = [_check_su2(np.eye(2) if s is None else s, tol) for s in (S1, S2, S3, S4)]
    u = np.exp(1j * phi) * np.kron(S[0], S[1]) @ cartan_core(alpha) @ np.kron(S[2], S[3])
    return OperatorMatrix(2, 2, u)


def self_dual_family(V, alpha: float, phi: float = 0.0, tol: float = 1e-9) -> OperatorMatrix:
    """Self-dual gates ``e^{i phi} (V^t x V^t) D(alpha) (V x V)``."""
    V = _check_su2(V, tol)
    u = np.exp(1j * phi) * np.kron(V.T, V.T) @ cartan_core(alpha) @ np.kron(V, V)
    return OperatorMatrix(2, 2, u)


def kicked_ising_gate() -> OperatorMatrix:
    """Kicked Ising gate at the self-dual point, edge convention."""
    m = np.array(
        [
            [1, -1, -1, -1],
            [-1, -1, 1, -1],
            [-1, 1, -1, -1],
            [-1, -1, -1, 1],
        ],
        dtype=complex,
    )
    return OperatorMatrix(2, 2, 0.5j * m, "edge")


def random_su2(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    a = q[0] + 1j * q[1]
    b = q[2] + 1j * q[3]
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])
