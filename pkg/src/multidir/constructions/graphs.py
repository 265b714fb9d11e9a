"""Qudit graph states on the symmetric arrangements.

Phases are kept as integer exponents of ``omega = exp(2 pi i / N)`` until the
final conversion, so the entanglement criteria can be compared exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..geometry import Geometry
from ..statecore import PureState

# number of symmetric edge classes (distance classes) per arrangement
PARAMETER_COUNT = {"square": 2, "hexagon": 3, "cube": 3, "octahedron": 2, "tetrahedron": 1}


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def _require_prime(N: int) -> None:
    if not is_prime(N):
        raise ValueError(f"graph states need a prime local dimension, got N={N}")


@dataclass(frozen=True)
class IncidenceGraph:
    """Edge labels ``labels[j][k]`` in ``0..N-1`` on ``K`` vertices (0-based storage)."""

    K: int
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=np.int64)
        if lab.shape != (self.K, self.K):
            raise ValueError(f"incidence matrix must be {self.K}x{self.K}")
        if np.any(lab != lab.T):
            raise ValueError("incidence matrix must be symmetric")
        if np.any(np.diag(lab) != 0):
            raise ValueError("self loops are not allowed")
        if np.any(lab < 0):
            raise ValueError("edge labels must be non-negative")

    @classmethod
    def from_matrix(cls, matrix) -> "IncidenceGraph":
        m = np.asarray(matrix, dtype=np.int64)
        return cls(m.shape[0], tuple(tuple(int(x) for x in row) for row in m))

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)

    def reduced(self, subset: Sequence[int]) -> np.ndarray:
        """Block ``I^{AB}``: rows are the (1-based) ``subset`` sites, columns the rest."""
        A = sorted(subset)
        B = [j for j in range(1, self.K + 1) if j not in A]
        return self.matrix[np.ix_([a - 1 for a in A], [b - 1 for b in B])]


def symmetric_incidence(geometry: Geometry, parameters: Sequence[int]) -> IncidenceGraph:
    """Label every pair of sites by the parameter of its distance class.

    Parameters are ordered by graph distance: square (edges, diagonals),
    hexagon (nearest, next-nearest, diagonals), cube (edges, face diagonals,
    body diagonals), octahedron (edges, diagonals).  Polygons with ``2k``
    sites take ``k`` parameters.
    """
    dist = geometry.distances()
    nclasses = max(dist.values())
    params = [int(p) for p in parameters]
    if len(params) != nclasses:
        raise ValueError(f"{geometry.name} takes {nclasses} parameters, got {len(params)}")
    lab = np.zeros((geometry.K, geometry.K), dtype=np.int64)
    for (j, k), d in dist.items():
        lab[j - 1, k - 1] = lab[k - 1, j - 1] = params[d - 1]
    return IncidenceGraph.from_matrix(lab)


def graph_state_exponents(incidence: IncidenceGraph, N: int) -> np.ndarray:
    """Integer phase exponents ``sum_{j<k} I_jk a_j a_k mod N`` on the configuration grid."""
    K = incidence.K
    lab = incidence.matrix % N
    grids = np.indices((N,) * K).reshape(K, -1)
    expo = np.zeros(N**K, dtype=np.int64)
    for j, k in itertools.combinations(range(K), 2):
        if lab[j, k]:
            expo += lab[j, k] * grids[j] * grids[k]
    return expo % N


def graph_state(incidence: IncidenceGraph, N: int) -> PureState:
    """Controlled-Z graph state on the uniform product state (site values ``0..N-1``)."""
    _require_prime(N)
    expo = graph_state_exponents(incidence, N)
    omega = np.exp(2j * np.pi * np.arange(N) / N)
    return PureState(N, incidence.K, omega[expo] / N ** (incidence.K / 2))


def int_determinant(m) -> int:
    """Exact integer determinant by permutation expansion (small matrices)."""
    m = [[int(x) for x in row] for row in np.asarray(m)]
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += -prod if inversions % 2 else prod
    return total


def reduced_incidence_determinant(geometry: Geometry, parameters: Sequence[int], N: int, subset=None) -> tuple[int, bool]:
    """``det I^{AB} mod N`` and whether it signals maximal entanglement.

    The default block uses ``A = {1..K/2}``; entry ``(j, k)`` is the label of
    the edge between sites ``j`` and ``k + K/2``.
    """
    _require_prime(N)
    inc = symmetric_incidence(geometry, parameters)
    A = tuple(range(1, geometry.half + 1)) if subset is None else tuple(subset)
    det = int_determinant(inc.reduced(A)) % N
    return det, det != 0


def closed_form_determinant(geometry: Geometry, parameters: Sequence[int]) -> int:
    """Factorised determinant of the symmetric reduced incidence matrix."""
    p = [int(x) for x in parameters]
    if geometry.kind == "square":
        a, b = p
        return b * b - a * a
    if geometry.kind == "hexagon":
        a, b, c = p
        return (c - a) * (c * c - 2 * b * b + c * a)
    if geometry.kind == "cube":
        a, b, c = p
        return (a - c) ** 2 * (a - 2 * b + c) * (a + 2 * b + c)
    if geometry.kind == "octahedron":
        a, c = p
        return (c - a) ** 2 * (c + 2 * a)
    raise ValueError(f"no closed form for {geometry.name}")
