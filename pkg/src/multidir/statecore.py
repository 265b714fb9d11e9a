"""Dense states, operators and the entanglement checks built on them.

A state over ``K`` sites of local dimension ``N`` is stored as a flat complex
vector of length ``N**K``; site 1 is the most significant digit and site
values are ``0..N-1`` internally (displayed as ``1..N``).

Operators are stored as ``out x in`` matrices, so that ``M[b, a]`` is the
amplitude of ``|b>`` in ``M|a>``.  The *diagonal* convention puts input ``j``
on site ``j`` and output ``j`` on its antipode ``j + K/2``; the *edge*
convention reorders the outputs according to ``Geometry.edge_outputs``.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .geometry import Geometry, transpose_positions

Convention = Literal["diagonal", "edge"]

NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised pure state of ``K`` qudits of dimension ``N``."""

    N: int
    K: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.N**self.K:
            raise ValueError(f"expected {self.N ** self.K} amplitudes, got {amps.size}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.N,) * self.K)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def amplitude(self, config: Sequence[int]) -> complex:
        """Amplitude of a 1-based configuration."""
        return complex(self.tensor[tuple(c - 1 for c in config)])

    def support(self, tol: float = 1e-12) -> list[tuple[int, ...]]:
        """1-based configurations with non-negligible amplitude, sorted."""
        idx = np.flatnonzero(np.abs(self.amplitudes) > tol)
        return [tuple(int(v) + 1 for v in np.unravel_index(i, self.tensor.shape)) for i in idx]

    @classmethod
    def from_configs(cls, N: int, K: int, configs: Iterable[Sequence[int]], amplitude=None):
        """Uniform (or given) amplitude on a set of 1-based configurations."""
        configs = list(configs)
        psi = np.zeros((N,) * K, dtype=complex)
        amp = amplitude if amplitude is not None else 1 / math.sqrt(len(configs))
        for c in configs:
            psi[tuple(v - 1 for v in c)] += amp
        return cls(N, K, psi.reshape(-1))

    def allclose(self, other: "PureState", tol: float = 1e-9) -> bool:
        return (self.N, self.K) == (other.N, other.K) and bool(
            np.max(np.abs(self.amplitudes - other.amplitudes)) <= tol
        )


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """An ``N**half_K`` square operator with its operator-state convention."""

    N: int
    half_K: int
    matrix: np.ndarray = field(repr=False)
    convention: Convention = "diagonal"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.N**self.half_K
        if m.shape != (d, d):
            raise ValueError(f"operator must be {d}x{d}, got {m.shape}")
        if self.convention not in ("diagonal", "edge"):
            raise ValueError(f"unknown convention {self.convention!r}")
        object.__setattr__(self, "matrix", m)

    @property
    def tensor(self) -> np.ndarray:
        """View with axes ``(out_1..out_h, in_1..in_h)``."""
        return self.matrix.reshape((self.N,) * (2 * self.half_K))

    def with_matrix(self, matrix: np.ndarray) -> "OperatorMatrix":
        return OperatorMatrix(self.N, self.half_K, matrix, self.convention)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    subset: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def is_unitary(matrix: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(matrix)
    eye = np.eye(m.shape[0])
    return bool(np.max(np.abs(m.conj().T @ m - eye)) <= tol and np.max(np.abs(m @ m.conj().T - eye)) <= tol)


def _check_dims(state: PureState, geometry: Geometry) -> None:
    if state.K != geometry.K:
        raise ValueError(f"state has {state.K} sites but {geometry.name} has {geometry.K}")


# ---------------------------------------------------------------------------
# operator <-> state
# ---------------------------------------------------------------------------


def to_diagonal_convention(op: OperatorMatrix, geometry: Geometry) -> OperatorMatrix:
    """Reorder the outputs of an edge-convention operator onto the diagonals."""
    if op.convention == "diagonal":
        return op
    if geometry.edge_outputs is None:
        raise ValueError(f"no edge convention is defined for {geometry.name}")
    h = op.half_K
    # output slot m of the edge operator sits on site edge_outputs[m]; the
    # diagonal operator's output j sits on site h + 1 + j
    axes = [geometry.edge_outputs.index(h + 1 + j) for j in range(h)] + list(range(h, 2 * h))
    t = np.transpose(op.tensor, axes)
    return OperatorMatrix(op.N, h, t.reshape(op.matrix.shape), "diagonal")


def to_edge_convention(op: OperatorMatrix, geometry: Geometry) -> OperatorMatrix:
    if op.convention == "edge":
        return op
    if geometry.edge_outputs is None:
        raise ValueError(f"no edge convention is defined for {geometry.name}")
    h = op.half_K
    axes = [geometry.edge_outputs[m] - h - 1 for m in range(h)] + list(range(h, 2 * h))
    t = np.transpose(op.tensor, axes)
    return OperatorMatrix(op.N, h, t.reshape(op.matrix.shape), "edge")


def state_from_operator(op: OperatorMatrix, geometry: Geometry, norm_tol: float = 1e-6) -> PureState:
    """Map an operator to its state: ``psi(a; b) = N**(-K/4) U[b, a]``.

    Raises ``ValueError`` on a dimension mismatch.  A non-normalised result
    (non-unitary input) is returned as is; check ``PureState.is_normalized``.
    """
    if 2 * op.half_K != geometry.K:
        raise ValueError(f"operator acts on {op.half_K} sites, {geometry.name} needs {geometry.half}")
    u = to_diagonal_convention(op, geometry)
    h = u.half_K
    t = np.transpose(u.tensor, list(range(h, 2 * h)) + list(range(h)))
    psi = t.reshape(-1) / op.N ** (geometry.K / 4)
    state = PureState(op.N, geometry.K, psi)
    if not state.is_normalized(norm_tol):
        warnings.warn(f"state norm {state.norm:.6g} deviates from 1 (non-unitary operator?)", stacklevel=2)
    return state


def operator_from_state(
    state: PureState,
    geometry: Geometry,
    bipartition: Iterable[int] | None = None,
    convention: Convention = "diagonal",
) -> OperatorMatrix:
    """Read a state as an operator from ``bipartition`` to its complement.

    Row and column indices follow ascending site labels on each side.  The
    edge convention is only defined for the input half ``{1..K/2}``.
    """
    _check_dims(state, geometry)
    h = geometry.half
    A = tuple(sorted(bipartition)) if bipartition is not None else tuple(range(1, h + 1))
    if not geometry.is_allowed(A) or len(A) != h:
        raise ValueError(f"{A} is not an allowed bipartition of {geometry.name}")
    B = geometry.complement(A)
    t = np.transpose(state.tensor, [j - 1 for j in B] + [j - 1 for j in A])
    d = state.N**h
    op = OperatorMatrix(state.N, h, t.reshape(d, d) * state.N ** (geometry.K / 4), "diagonal")
    if convention == "edge":
        if A != tuple(range(1, h + 1)):
            raise ValueError("edge convention is only defined for the input half {1..K/2}")
        op = to_edge_convention(op, geometry)
    return op


# ---------------------------------------------------------------------------
# reduced density matrices and entropies
# ---------------------------------------------------------------------------


def reduced_density_matrix(state: PureState, subset: Iterable[int]) -> DensityMatrix:
    """Partial trace of ``|psi><psi|`` over the complement of ``subset``."""
    A = tuple(sorted(set(subset)))
    if not A or len(A) >= state.K:
        raise ValueError("subset must be non-empty and proper")
    if any(not 1 <= j <= state.K for j in A):
        raise ValueError(f"subset {A} outside 1..{state.K}")
    rest = [j for j in range(1, state.K + 1) if j not in A]
    t = np.transpose(state.tensor, [j - 1 for j in A] + [j - 1 for j in rest])
    m = t.reshape(state.N ** len(A), -1)
    return DensityMatrix(A, m @ m.conj().T)


def entanglement_deviation(state: PureState, subset: Iterable[int]) -> float:
    """Max-norm distance of ``rho_A`` from the maximally mixed state."""
    rho = reduced_density_matrix(state, subset)
    d = rho.matrix.shape[0]
    return float(np.max(np.abs(rho.matrix - np.eye(d) / d)))


def is_maximally_entangled(state: PureState, subset: Iterable[int], tol: float = 1e-9) -> bool:
    return entanglement_deviation(state, subset) <= tol


def von_neumann_entropy(state: PureState, subset: Iterable[int]) -> float:
    """Entropy of ``rho_A`` in nats, with ``0 log 0 = 0``."""
    lam = reduced_density_matrix(state, subset).eigenvalues
    lam = lam[lam > 1e-15]
    # clamp rounding noise on pure reductions
    return max(0.0, float(-np.sum(lam * np.log(lam))))


@dataclass
class BipartitionCheck:
    subset: tuple[int, ...]
    deviation: float
    passed: bool


@dataclass
class MultidirectionalReport:
    checks: list[BipartitionCheck]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.overall


def is_multidirectional_unitary(state: PureState, geometry: Geometry, tol: float = 1e-9) -> MultidirectionalReport:
    """Check maximal entanglement for every allowed bipartition."""
    _check_dims(state, geometry)
    checks = []
    for A in geometry.bipartitions:
        dev = entanglement_deviation(state, A)
        checks.append(BipartitionCheck(A, dev, dev <= tol))
    return MultidirectionalReport(checks)


def is_absolutely_maximally_entangled(state: PureState, tol: float = 1e-9) -> bool:
    for size in range(1, state.K // 2 + 1):
        for A in itertools.combinations(range(1, state.K + 1), size):
            if not is_maximally_entangled(state, A, tol):
                return False
    return True


def diagonal_entanglement(state: PureState, geometry: Geometry) -> float:
    """Largest entropy of a single diagonal macro-site (0 for a product of diagonals)."""
    _check_dims(state, geometry)
    if not geometry.diagonals:
        raise ValueError(f"{geometry.name} has no antipodal diagonals")
    if len(geometry.diagonals) == 1:
        return 0.0
    return max(von_neumann_entropy(state, d) for d in geometry.diagonals)


# ---------------------------------------------------------------------------
# operator manipulations
# ---------------------------------------------------------------------------


def reshuffle(op: OperatorMatrix) -> OperatorMatrix:
    """Two-site reshuffle ``R[(d,b),(c,a)] = U[(c,d),(a,b)]``."""
    if op.half_K != 2:
        raise ValueError("reshuffle is defined for two-site operators only")
    r = np.einsum("cdab->dbca", op.tensor)
    return op.with_matrix(r.reshape(op.matrix.shape))


def partial_transpose(op: OperatorMatrix, site_positions: Iterable[int]) -> OperatorMatrix:
    """Swap input and output index of the given (1-based) tensor factors."""
    h = op.half_K
    positions = sorted(set(site_positions))
    if any(not 1 <= p <= h for p in positions):
        raise ValueError(f"positions {positions} outside 1..{h}")
    axes = list(range(2 * h))
    for p in positions:
        axes[p - 1], axes[h + p - 1] = axes[h + p - 1], axes[p - 1]
    t = np.transpose(op.tensor, axes)
    return op.with_matrix(t.reshape(op.matrix.shape))


def swap_operator(N: int) -> np.ndarray:
    d = N * N
    p = np.zeros((d, d))
    for a in range(N):
        for b in range(N):
            p[b * N + a, a * N + b] = 1
    return p


def operator_is_multidirectional_unitary(op: OperatorMatrix, geometry: Geometry, tol: float = 1e-9) -> dict:
    """Unitarity of the partial transposes that encode each allowed bipartition."""
    u = to_diagonal_convention(op, geometry)
    out = {}
    for A in geometry.bipartitions:
        T = transpose_positions(geometry, A)
        out[A] = is_unitary(partial_transpose(u, T).matrix, tol)
    return out


# ---------------------------------------------------------------------------
# site permutations, local unitaries, spatial symmetry
# ---------------------------------------------------------------------------


def apply_site_permutation(state: PureState, perm: Sequence[int]) -> PureState:
    """Apply ``P_g``: the value on site ``j`` moves to site ``g(j)``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(1, state.K + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{state.K}")
    axes = [0] * state.K
    for j, gj in enumerate(perm):
        axes[gj - 1] = j
    return PureState(state.N, state.K, np.transpose(state.tensor, axes).reshape(-1))


def apply_local_unitaries(state: PureState, ops: Sequence[np.ndarray], tol: float = 1e-9) -> PureState:
    """Apply ``U1 (x) U2 (x) ... (x) UK``; every factor must be unitary."""
    if len(ops) != state.K:
        raise ValueError(f"need {state.K} one-site operators, got {len(ops)}")
    t = state.tensor
    for j, u in enumerate(ops):
        u = np.asarray(u, dtype=complex)
        if u.shape != (state.N, state.N) or not is_unitary(u, tol):
            raise ValueError(f"factor {j + 1} is not an {state.N}x{state.N} unitary")
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [j])), 0, j)
    return PureState(state.N, state.K, t.reshape(-1))


def is_spatially_symmetric(state: PureState, geometry: Geometry, tol: float = 1e-9) -> bool:
    _check_dims(state, geometry)
    for g in geometry.generators:
        moved = apply_site_permutation(state, g)
        if np.max(np.abs(moved.amplitudes - state.amplitudes)) > tol:
            return False
    return True


@dataclass
class MonomialWitness:
    """Per-site monomial ``|v> -> omega**phase[j][sigma_j(v)] |sigma_j(v)>`` times a global phase.

    ``permutations[j]`` lists the 1-based image of each value on site ``j+1``.
    """

    permutations: tuple[tuple[int, ...], ...]
    phase_exponents: tuple[tuple[int, ...], ...]
    global_phase: complex

    def operators(self, N: int) -> list[np.ndarray]:
        omega = np.exp(2j * np.pi / N)
        out = []
        for sigma, k in zip(self.permutations, self.phase_exponents):
            m = np.zeros((N, N), dtype=complex)
            for v, sv in enumerate(sigma):
                m[sv - 1, v] = omega ** k[sv - 1]
            out.append(m)
        return out


@dataclass
class WeakInvarianceResult:
    permutation: tuple[int, ...]
    invariant: bool
    witness: complex | MonomialWitness | None


def _solve_mod_prime(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``A x = b (mod p)`` for prime ``p`` (free variables set to 0)."""
    A = A.astype(np.int64) % p
    b = b.astype(np.int64) % p
    rows, cols = A.shape
    M = np.concatenate([A, b[:, None]], axis=1)
    pivots = []
    r = 0
    for c in range(cols):
        nz = [i for i in range(r, rows) if M[i, c]]
        if not nz:
            continue
        M[[r, nz[0]]] = M[[nz[0], r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if np.any(M[r:, -1] % p):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = M[i, -1]
    return x


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(math.isqrt(n)) + 1))


def _monomial_witness(source: PureState, target: PureState, tol: float) -> MonomialWitness | None:
    N, K = source.N, source.K
    perms = list(itertools.permutations(range(N)))
    tuples = sorted(
        itertools.product(range(len(perms)), repeat=K),
        key=lambda t: (sum(i != 0 for i in t), t[::-1]),
    )
    target_t = target.tensor
    target_mask = np.abs(target_t) > tol
    for choice in tuples:
        t = source.tensor
        for j, pi in enumerate(choice):
            if pi:
                sigma = perms[pi]
                inv = np.argsort(sigma)
                t = np.take(t, inv, axis=j)
        if not np.array_equal(np.abs(t) > tol, target_mask):
            continue
        if np.max(np.abs(np.abs(t) - np.abs(target_t))) > tol:
            continue
        idx = np.argwhere(target_mask)
        ratios = target_t[target_mask] / t[target_mask]
        ref = ratios[0]
        steps = np.angle(ratios / ref) * N / (2 * np.pi)
        k = np.rint(steps)
        if np.max(np.abs(steps - k)) > 1e-6:
            continue
        # unknowns x[j, v]: exponent of the phase on value v of site j
        rows = []
        for c in idx:
            row = np.zeros(K * N, dtype=np.int64)
            for j in range(K):
                row[j * N + c[j]] += 1
                row[j * N + idx[0][j]] -= 1
            rows.append(row)
        x = _solve_mod_prime(np.array(rows), k.astype(np.int64), N)
        if x is None:
            continue
        # global phase absorbs the reference configuration's monomial phase
        omega = np.exp(2j * np.pi / N)
        g = ref / omega ** int(sum(x[j * N + idx[0][j]] for j in range(K)))
        witness = MonomialWitness(
            permutations=tuple(tuple(v + 1 for v in perms[pi]) for pi in choice),
            phase_exponents=tuple(tuple(int(v) for v in x[j * N:(j + 1) * N]) for j in range(K)),
            global_phase=complex(g),
        )
        return witness
    return None


def weak_spatial_invariance(
    state: PureState,
    geometry: Geometry,
    search_space: Literal["global-phase", "monomial"] = "global-phase",
    permutations: Sequence[Sequence[int]] | None = None,
    tol: float = 1e-9,
) -> list[WeakInvarianceResult]:
    """Try to undo each site permutation with local operators.

    For every permutation ``g`` (the group generators unless given) look for
    a local operator ``L`` in the search space with ``L P_g psi = psi``.  The
    ``monomial`` space is per-site permutation matrices dressed with N-th
    roots of unity (plus a global phase) and needs prime ``N``.  Witnesses
    are searched in order of the number of sites they act on non-trivially.
    """
    _check_dims(state, geometry)
    if search_space not in ("global-phase", "monomial"):
        raise ValueError(f"unknown search space {search_space!r}")
    if search_space == "monomial" and not _is_prime(state.N):
        raise ValueError("monomial search needs a prime local dimension")
    perms = [tuple(g) for g in (permutations if permutations is not None else geometry.generators)]
    results = []
    for g in perms:
        moved = apply_site_permutation(state, g)
        if search_space == "global-phase":
            c = complex(np.vdot(moved.amplitudes, state.amplitudes))
            ok = abs(abs(c) - 1) <= tol and np.max(np.abs(c * moved.amplitudes - state.amplitudes)) <= tol
            results.append(WeakInvarianceResult(g, bool(ok), c if ok else None))
        else:
            w = _monomial_witness(moved, state, tol)
            results.append(WeakInvarianceResult(g, w is not None, w))
    return results
