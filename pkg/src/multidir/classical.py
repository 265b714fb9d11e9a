"""Classical (permutation) solutions built from orbits of configurations.

Everything here is exact: configurations are tuples of site values ``1..N``
indexed by site, and all checks are set and permutation operations.  The
first ``K/2`` values of a configuration are its *input*, the last ``K/2`` its
*output*; value ``j`` and ``j + K/2`` share a diagonal.
"""

from __future__ import annotations

import logging
import re
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .exact_cover import exact_covers, exact_covers_with, first_column_branches
from .geometry import Geometry

logger = logging.getLogger(__name__)

Config = tuple[int, ...]

# enumeration guard on the number of input tuples
MAX_INPUT_TUPLES = 4096


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------


def act(g: Sequence[int], config: Sequence[int]) -> Config:
    """``P_g`` on a configuration: the value on site ``j`` moves to site ``g(j)``."""
    out = [0] * len(config)
    for j, v in enumerate(config):
        out[g[j] - 1] = v
    return tuple(out)


def is_diagonally_identical(config: Sequence[int]) -> bool:
    h = len(config) // 2
    return tuple(config[:h]) == tuple(config[h:])


@dataclass(frozen=True, order=True)
class Orbit:
    """Distinct images of a configuration under the symmetry group."""

    members: tuple[Config, ...]

    @property
    def label(self) -> Config:
        return self.members[0]

    @property
    def half(self) -> int:
        return len(self.label) // 2

    @property
    def diagonally_identical(self) -> bool:
        return is_diagonally_identical(self.label)

    @property
    def inputs(self) -> set[Config]:
        h = self.half
        return {c[:h] for c in self.members}

    @property
    def outputs(self) -> set[Config]:
        h = self.half
        return {c[h:] for c in self.members}

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return format_label(self.label)


def orbit_of(config: Sequence[int], geometry: Geometry) -> Orbit:
    config = tuple(int(v) for v in config)
    if len(config) != geometry.K:
        raise ValueError(f"configuration {config} does not have {geometry.K} sites")
    return Orbit(tuple(sorted({act(g, config) for g in geometry.symmetry_group})))


def is_non_overlapping(orbit: Orbit) -> bool:
    """No two members share their input tuple."""
    return len(orbit.inputs) == len(orbit)


def mutually_non_overlapping(orbit1: Orbit, orbit2: Orbit) -> bool:
    return orbit1.inputs.isdisjoint(orbit2.inputs)


def is_complete(orbits: Iterable[Orbit], N: int) -> bool:
    orbits = list(orbits)
    if not orbits:
        return False
    h = orbits[0].half
    covered = set().union(*(o.inputs for o in orbits))
    return len(covered) == N**h


# ---------------------------------------------------------------------------
# compact notation
# ---------------------------------------------------------------------------


def format_label(config: Sequence[int]) -> str:
    h = len(config) // 2
    digits = "".join(str(v) for v in config)
    if h > 2:
        return f"[{digits[:h]} {digits[h:]}]"
    return f"[{digits}]"


_BRACKET = re.compile(r"\[([^\]]*)\]")


def parse_compact_notation(text: str | Sequence[str], K: int) -> list[Config]:
    """Parse labels such as ``"[1424],[3344]"`` or ``"[111 222], [121 323]"``.

    ``"Identity"`` or an empty string give no labels.
    """
    if not isinstance(text, str):
        text = ",".join(text)
    stripped = text.strip()
    if stripped.lower() in ("", "identity"):
        return []
    groups = _BRACKET.findall(stripped)
    rest = _BRACKET.sub("", stripped).replace(",", "").strip()
    if not groups or rest:
        raise ValueError(f"cannot parse compact notation {text!r}")
    labels = []
    for g in groups:
        digits = re.sub(r"[\s,]", "", g)
        if not digits.isdigit() or len(digits) != K:
            raise ValueError(f"label [{g}] is not a {K}-site configuration")
        labels.append(tuple(int(d) for d in digits))
    return labels


# ---------------------------------------------------------------------------
# solutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalSolution:
    """A union of orbits satisfying both bijection conditions."""

    geometry: Geometry
    N: int
    orbits: tuple[Orbit, ...]

    @property
    def support(self) -> frozenset[Config]:
        return frozenset(c for o in self.orbits for c in o.members)

    @property
    def nondiagonal_orbits(self) -> tuple[Orbit, ...]:
        return tuple(o for o in self.orbits if not o.diagonally_identical)

    @property
    def notation(self) -> str:
        labels = sorted(o.label for o in self.nondiagonal_orbits)
        if not labels:
            return "Identity"
        return ",".join(format_label(c) for c in labels)

    @property
    def sort_key(self) -> tuple[int, str]:
        return (len(self.nondiagonal_orbits), self.notation)

    def __str__(self) -> str:
        return self.notation


def input_bijection(support: Iterable[Config], N: int, half: int) -> bool:
    ins = [c[:half] for c in support]
    return len(ins) == N**half and len(set(ins)) == len(ins)


def output_bijection(support: Iterable[Config], N: int, half: int) -> bool:
    outs = [c[half:] for c in support]
    return len(outs) == N**half and len(set(outs)) == len(outs)


def is_symmetric_support(support: Iterable[Config], geometry: Geometry) -> bool:
    s = set(support)
    return all(act(g, c) in s for g in geometry.generators for c in s)


def _require_diagonals(geometry: Geometry) -> None:
    if not geometry.diagonals:
        raise ValueError(f"{geometry.name} has no diagonals; classical solutions are not defined")


def _make_solution(geometry: Geometry, N: int, orbits: Iterable[Orbit]) -> ClassicalSolution:
    return ClassicalSolution(geometry, N, tuple(sorted(orbits, key=lambda o: o.label)))


def complete_with_diagonal_orbits(orbits: Iterable[Orbit], geometry: Geometry, N: int) -> ClassicalSolution:
    """Fill every uncovered input tuple with the diagonally identical orbit of ``(a; a)``."""
    _require_diagonals(geometry)
    orbits = list(orbits)
    h = geometry.half
    for o in orbits:
        if not is_non_overlapping(o):
            raise ValueError(f"orbit {o} is overlapping")
    for o1, o2 in combinations(orbits, 2):
        if not mutually_non_overlapping(o1, o2):
            raise ValueError(f"orbits {o1} and {o2} overlap")
    covered = set().union(*(o.inputs for o in orbits)) if orbits else set()
    for a in product(range(1, N + 1), repeat=h):
        if a in covered:
            continue
        o = orbit_of(a + a, geometry)
        if not covered.isdisjoint(o.inputs):
            raise ValueError(f"diagonal orbit of {a} collides with the given orbits")
        orbits.append(o)
        covered |= o.inputs
    sol = _make_solution(geometry, N, orbits)
    if not input_bijection(sol.support, N, h) or not output_bijection(sol.support, N, h):
        raise ValueError("orbit list does not complete to a bijection")
    return sol


def identity_solution(geometry: Geometry, N: int) -> ClassicalSolution:
    return complete_with_diagonal_orbits([], geometry, N)


def expand_compact_notation(labels: str | Sequence[str], geometry: Geometry, N: int) -> ClassicalSolution:
    """Orbits of the listed labels, completed with diagonally identical orbits."""
    configs = parse_compact_notation(labels, geometry.K)
    for c in configs:
        if any(not 1 <= v <= N for v in c):
            raise ValueError(f"label {format_label(c)} has values outside 1..{N}")
    orbits = []
    for c in configs:
        o = orbit_of(c, geometry)
        if o not in orbits:
            orbits.append(o)
    return complete_with_diagonal_orbits(orbits, geometry, N)


def solution_from_support(geometry: Geometry, N: int, support: Iterable[Config]) -> ClassicalSolution:
    """Decompose a symmetric support into orbits of ``geometry``."""
    remaining = set(support)
    orbits = []
    while remaining:
        o = orbit_of(min(remaining), geometry)
        if not set(o.members) <= remaining:
            raise ValueError("support is not a union of orbits")
        remaining -= set(o.members)
        orbits.append(o)
    return _make_solution(geometry, N, orbits)


def solution_to_state(solution: ClassicalSolution):
    """Uniform superposition of the support with amplitude ``N**(-K/4)``."""
    from .statecore import PureState

    g = solution.geometry
    return PureState.from_configs(solution.N, g.K, sorted(solution.support), amplitude=solution.N ** (-g.K / 4))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def all_orbits(geometry: Geometry, N: int) -> list[Orbit]:
    seen: set[Config] = set()
    out = []
    for c in product(range(1, N + 1), repeat=geometry.K):
        if c in seen:
            continue
        o = orbit_of(c, geometry)
        seen.update(o.members)
        out.append(o)
    return out


def _cover_problem(geometry: Geometry, N: int):
    orbits = [o for o in all_orbits(geometry, N) if is_non_overlapping(o)]
    rows = {i: sorted(o.inputs) for i, o in enumerate(orbits)}
    universe = list(product(range(1, N + 1), repeat=geometry.half))
    return orbits, universe, rows


def _solutions_from_covers(geometry, N, orbits, covers) -> list[ClassicalSolution]:
    out = []
    h = geometry.half
    for cover in covers:
        sol = _make_solution(geometry, N, (orbits[i] for i in cover))
        # the cover guarantees the input bijection; outputs are checked here
        if output_bijection(sol.support, N, h):
            out.append(sol)
    return out


def _branch_worker(args):
    geometry, N, forced = args
    orbits, universe, rows = _cover_problem(geometry, N)
    covers = exact_covers_with(universe, rows, forced)
    return _solutions_from_covers(geometry, N, orbits, covers)


def enumerate_solutions(geometry: Geometry, N: int, jobs: int = 1) -> list[ClassicalSolution]:
    """All spatially symmetric classical solutions, sorted canonically.

    Solutions are exact covers of the input tuples by non-overlapping orbits,
    filtered by the output bijection.  ``jobs > 1`` splits the search over
    the first branching column; the result does not depend on ``jobs``.
    """
    _require_diagonals(geometry)
    if N < 1:
        raise ValueError("N must be positive")
    if N**geometry.half > MAX_INPUT_TUPLES:
        raise ValueError(f"N^(K/2) = {N ** geometry.half} exceeds the enumeration guard {MAX_INPUT_TUPLES}")
    if N == 1:
        return [identity_solution(geometry, 1)]
    orbits, universe, rows = _cover_problem(geometry, N)
    logger.info("%s N=%d: %d non-overlapping orbits", geometry.name, N, len(orbits))
    if jobs > 1:
        _, branch_rows = first_column_branches(universe, rows)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_branch_worker, [(geometry, N, r) for r in branch_rows])
            sols = [s for part in parts for s in part]
    else:
        sols = _solutions_from_covers(geometry, N, orbits, exact_covers(universe, rows))
    return sorted(sols, key=lambda s: s.sort_key)


# ---------------------------------------------------------------------------
# equivalences
# ---------------------------------------------------------------------------


def strong_equivalence(sol1: ClassicalSolution, sol2: ClassicalSolution) -> tuple[tuple[int, ...], ...] | None:
    """Per-site value permutations mapping ``support(sol1)`` onto ``support(sol2)``.

    Returns the permutations as 1-based image tuples (``pi[j][v-1]`` is the
    image of value ``v`` on site ``j+1``), or ``None``.  Sites are assigned in
    order; a partial assignment survives only if the projections of both
    supports onto the assigned sites agree as multisets.
    """
    if sol1.N != sol2.N or sol1.geometry.K != sol2.geometry.K:
        return None
    S1 = sorted(sol1.support)
    S2 = sol2.support
    if len(S1) != len(S2):
        return None
    K, N = sol1.geometry.K, sol1.N
    targets = [Counter(c[: m + 1] for c in S2) for m in range(K)]
    perms = list(permutations(range(1, N + 1)))
    chosen: list[tuple[int, ...]] = []

    def search(j: int, prefixes: list[tuple[int, ...]]):
        if j == K:
            return tuple(chosen)
        for p in perms:
            new = [pre + (p[c[j] - 1],) for pre, c in zip(prefixes, S1)]
            if Counter(new) == targets[j]:
                chosen.append(p)
                found = search(j + 1, new)
                if found is not None:
                    return found
                chosen.pop()
        return None

    return search(0, [() for _ in S1])


def weak_equivalence(sol1: ClassicalSolution, sol2: ClassicalSolution) -> tuple[int, ...] | None:
    """A single value permutation ``V`` applied on every site, or ``None``."""
    if sol1.N != sol2.N or sol1.geometry.K != sol2.geometry.K:
        return None
    S2 = sol2.support
    for p in permutations(range(1, sol1.N + 1)):
        if {tuple(p[v - 1] for v in c) for c in sol1.support} == S2:
            return p
    return None


def _strong_invariant(solution: ClassicalSolution) -> tuple:
    """Projection statistics that per-site relabelling cannot change."""
    S = solution.support
    K = solution.geometry.K
    key = []
    for size in (2, 3):
        for sites in combinations(range(K), size):
            counts = Counter(tuple(c[s] for s in sites) for c in S)
            key.append(tuple(sorted(counts.values())))
    return tuple(key)


@dataclass
class EquivalenceClass:
    representative: ClassicalSolution
    members: list[ClassicalSolution]

    def __str__(self) -> str:
        return self.representative.notation


def strong_classes(solutions: Sequence[ClassicalSolution]) -> list[EquivalenceClass]:
    """Partition solutions into strong classes, canonically ordered."""
    buckets: dict[tuple, list[list[ClassicalSolution]]] = defaultdict(list)
    for sol in solutions:
        classes = buckets[_strong_invariant(sol)]
        for members in classes:
            if strong_equivalence(members[0], sol) is not None:
                members.append(sol)
                break
        else:
            classes.append([sol])
    out = []
    for classes in buckets.values():
        for members in classes:
            members = sorted(members, key=lambda s: s.sort_key)
            out.append(EquivalenceClass(members[0], members))
    return sorted(out, key=lambda c: c.representative.sort_key)


def weak_classes(solutions: Sequence[ClassicalSolution]) -> list[list[ClassicalSolution]]:
    classes: list[list[ClassicalSolution]] = []
    for sol in sorted(solutions, key=lambda s: s.sort_key):
        for members in classes:
            if weak_equivalence(members[0], sol) is not None:
                members.append(sol)
                break
        else:
            classes.append([sol])
    return classes


def classify(geometry: Geometry, N: int, jobs: int = 1) -> list[EquivalenceClass]:
    """Strong equivalence classes of all classical solutions.

    The representative of a class has the fewest diagonally non-identical
    orbits, ties broken by its compact notation.
    """
    return strong_classes(enumerate_solutions(geometry, N, jobs=jobs))


def octahedral_hexagonal_map(N: int, jobs: int = 1) -> dict[int, int]:
    """1-based index of the hexagonal class containing each octahedral class."""
    from .geometry import build_geometry

    octa, hexa = build_geometry("octahedron"), build_geometry("hexagon")
    oct_classes = classify(octa, N, jobs)
    hex_classes = classify(hexa, N, jobs)
    by_support = {}
    for j, cls in enumerate(hex_classes, start=1):
        for m in cls.members:
            by_support[m.support] = j
    mapping = {}
    for i, cls in enumerate(oct_classes, start=1):
        j = by_support.get(cls.representative.support)
        if j is None:
            as_hex = solution_from_support(hexa, N, cls.representative.support)
            j = next(
                (k for k, hc in enumerate(hex_classes, start=1) if strong_equivalence(as_hex, hc.representative)),
                None,
            )
        if j is None:
            raise RuntimeError(f"octahedral class {cls} has no hexagonal counterpart")
        mapping[i] = j
    return mapping
