"""Gates assembled from complex Hadamard matrices attached to edges.

Matrix elements are written ``X_a^b = X[b, a]`` (the amplitude of ``|b>`` in
``X|a>``), matching the operator convention of :mod:`multidir.statecore`.
"""

from __future__ import annotations

import numpy as np

from ..statecore import OperatorMatrix


def fourier_hadamard(N: int) -> np.ndarray:
    """``F[j, k] = exp(2 pi i j k / N)`` for ``j, k = 0..N-1``."""
    if N < 2:
        raise ValueError("Fourier matrix needs N >= 2")
    j = np.arange(N)
    return np.exp(2j * np.pi * np.outer(j, j) / N)


def is_complex_hadamard(matrix, tol: float = 1e-9) -> bool:
    """Unimodular entries and ``H H^dagger = N``."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    n = m.shape[0]
    return bool(
        np.max(np.abs(np.abs(m) - 1)) <= tol
        and np.max(np.abs(m @ m.conj().T - n * np.eye(n))) <= tol
    )


def _require_hadamard(*mats, tol=1e-9) -> int:
    sizes = {np.asarray(m).shape for m in mats}
    if len(sizes) != 1:
        raise ValueError(f"Hadamard matrices of different sizes: {sorted(sizes)}")
    for m in mats:
        if not is_complex_hadamard(m, tol):
            raise ValueError("input is not a complex Hadamard matrix")
    return np.asarray(mats[0]).shape[0]


def hadamard_equivalent(A, A2, D1, D2, P1, P2, tol: float = 1e-9) -> bool:
    """Check a given witness of ``A2 = P2 D2 A D1 P1``."""
    lhs = np.asarray(A2)
    rhs = np.asarray(P2) @ np.asarray(D2) @ np.asarray(A) @ np.asarray(D1) @ np.asarray(P1)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)


def hadamard_square(A, B=None, C=None, E=None) -> OperatorMatrix:
    """Edge-convention gate ``U[(d,c),(a,b)] = A_a^b B_b^c C_c^d E_d^a / N``.

    With a single symmetric ``A`` used on all four edges the gate is self-dual.
    """
    B = A if B is None else B
    C = A if C is None else C
    E = A if E is None else E
    A, B, C, E = (np.asarray(x, dtype=complex) for x in (A, B, C, E))
    N = _require_hadamard(A, B, C, E)
    # h[d, c, a, b] = A[b, a] B[c, b] C[d, c] E[a, d]
    h = np.einsum("ba,cb,dc,ad->dcab", A, B, C, E)
    return OperatorMatrix(N, 2, h.reshape(N * N, N * N) / N, "edge")


def two_site_diagonal(A: np.ndarray) -> np.ndarray:
    """``D^A`` with ``(D^A)_{ab}^{ab} = A_a^b``."""
    return np.diag(np.asarray(A, dtype=complex).T.reshape(-1))


def hadamard_square_factorized(A, B=None, C=None, E=None) -> OperatorMatrix:
    """Same gate as :func:`hadamard_square`, built as ``D^C (E^t x B) D^A / N``."""
    B = A if B is None else B
    C = A if C is None else C
    E = A if E is None else E
    A, B, C, E = (np.asarray(x, dtype=complex) for x in (A, B, C, E))
    N = _require_hadamard(A, B, C, E)
    # (D^C)_{dc}^{dc} = C_c^d = C[d, c]
    dc = np.diag(np.asarray(C).reshape(-1))
    u = dc @ np.kron(E.T, B) @ two_site_diagonal(A) / N
    return OperatorMatrix(N, 2, u, "edge")


def _embed_pair(D2: np.ndarray, N: int, j: int, k: int, sites: int = 4) -> np.ndarray:
    """Diagonal of a two-site diagonal operator placed on sites ``j < k`` (1-based)."""
    d2 = np.diag(D2).reshape(N, N)
    shape = [1] * sites
    shape[j - 1] = N
    shape[k - 1] = N
    full = np.broadcast_to(d2.reshape(shape), (N,) * sites)
    return full.reshape(-1)


def hadamard_cube(A, order=((1, 4), (3, 4), (2, 3), (1, 2)), tol: float = 1e-9) -> OperatorMatrix:
    """Edge-convention cubic gate from a symmetric Hadamard matrix on 12 edges.

    ``U = Dring * (A x A x A x A) * Dring / N**2`` with ``Dring`` the product of
    the four two-site ``D^A`` factors around the face ``1-2-3-4``.  The factor
    order is irrelevant since the factors are diagonal.
    """
    A = np.asarray(A, dtype=complex)
    N = _require_hadamard(A, tol=tol)
    if np.max(np.abs(A - A.T)) > tol:
        raise ValueError("cubic Hadamard construction needs a symmetric matrix")
    ring = np.ones(N**4, dtype=complex)
    DA = two_site_diagonal(A)
    for j, k in order:
        ring = ring * _embed_pair(DA, N, j, k)
    a4 = np.kron(np.kron(A, A), np.kron(A, A))
    u = (ring[:, None] * a4 * ring[None, :]) / N**2
    return OperatorMatrix(N, 4, u, "edge")


HADAMARD_F2I = np.array([[1, 1j], [1j, 1]])
