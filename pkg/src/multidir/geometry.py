"""Site arrangements, their symmetry groups and allowed bipartitions.

Sites are labelled 1..K everywhere in the public API.  For every arrangement
except the tetrahedron the antipodal pairs are ``(j, j + K/2)``, so the first
half of the sites carries the "input" of the diagonal-convention operator and
the second half the "output".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

Perm = tuple[int, ...]
Subset = tuple[int, ...]

KINDS = ("square", "hexagon", "polygon", "cube", "octahedron", "tetrahedron")


@dataclass(frozen=True)
class Geometry:
    """An arrangement of ``K`` sites together with its symmetry data.

    Attributes
    ----------
    kind : str
        One of ``square``, ``hexagon``, ``polygon``, ``cube``, ``octahedron``,
        ``tetrahedron``.
    K : int
        Number of sites.
    diagonals : tuple of (int, int)
        Antipodal site pairs; empty for the tetrahedron.
    edges : tuple of (int, int)
        Edges of the arrangement's graph (used to classify site pairs).
    generators : tuple of Perm
        Generators of the symmetry group, as 1-based image tuples.
    symmetry_group : tuple of Perm
        The full group, lexicographically sorted.
    bipartitions : tuple of Subset
        One subset per allowed bipartition, always the side containing site 1.
    edge_outputs : tuple of int or None
        Sites carrying the outputs of the edge-convention operator, in output
        slot order.  ``None`` when no edge convention is defined.
    """

    kind: str
    K: int
    diagonals: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]
    generators: tuple[Perm, ...]
    symmetry_group: tuple[Perm, ...] = field(repr=False)
    bipartitions: tuple[Subset, ...]
    edge_outputs: tuple[int, ...] | None = None

    @property
    def name(self) -> str:
        if self.kind == "polygon":
            return f"polygon:{self.K}"
        return self.kind

    @property
    def half(self) -> int:
        return self.K // 2

    @property
    def order(self) -> int:
        return len(self.symmetry_group)

    @property
    def sites(self) -> tuple[int, ...]:
        return tuple(range(1, self.K + 1))

    def complement(self, subset: Iterable[int]) -> Subset:
        s = set(subset)
        return tuple(j for j in self.sites if j not in s)

    def normalize_subset(self, subset: Iterable[int]) -> Subset:
        """Return the side of the bipartition ``subset | complement`` containing site 1."""
        s = tuple(sorted(set(subset)))
        return s if 1 in s else self.complement(s)

    def is_allowed(self, subset: Iterable[int]) -> bool:
        return self.normalize_subset(subset) in self.bipartitions

    def distances(self) -> dict[tuple[int, int], int]:
        """Graph distance between every pair of distinct sites (``j < k``)."""
        adj: dict[int, set[int]] = {j: set() for j in self.sites}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        out = {}
        for src in self.sites:
            dist = {src: 0}
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            for dst, d in dist.items():
                if src < dst:
                    out[(src, dst)] = d
        return out


def compose(g: Sequence[int], h: Sequence[int]) -> Perm:
    """Composition ``g after h`` of 1-based permutations."""
    return tuple(g[h[j] - 1] for j in range(len(h)))


def inverse(g: Sequence[int]) -> Perm:
    inv = [0] * len(g)
    for j, gj in enumerate(g, start=1):
        inv[gj - 1] = j
    return tuple(inv)


def is_permutation(g: Sequence[int]) -> bool:
    return sorted(g) == list(range(1, len(g) + 1))


def symmetry_group_closure(generators: Sequence[Sequence[int]]) -> list[Perm]:
    """Close a set of site permutations under composition.

    The result contains the identity, is deduplicated, and is sorted
    lexicographically by image tuple.
    """
    gens = [tuple(g) for g in generators]
    if not gens:
        return []
    K = len(gens[0])
    for g in gens:
        if len(g) != K or not is_permutation(g):
            raise ValueError(f"not a permutation of 1..{K}: {g}")
    identity = tuple(range(1, K + 1))
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def apply_to_subset(g: Sequence[int], subset: Iterable[int]) -> Subset:
    return tuple(sorted(g[j - 1] for j in subset))


def orbit_of_subset(geometry: Geometry, subset: Iterable[int]) -> list[Subset]:
    """All distinct images of ``subset`` under the symmetry group, sorted."""
    subset = tuple(subset)
    if any(not 1 <= j <= geometry.K for j in subset):
        raise ValueError(f"subset {subset} is not inside 1..{geometry.K}")
    return sorted({apply_to_subset(g, subset) for g in geometry.symmetry_group})


# -- coordinates of the 3D solids (matching the site labels of the figures) --

_CUBE_COORDS = {
    1: (-1, -1, 1),
    2: (1, -1, 1),
    3: (1, -1, -1),
    4: (-1, -1, -1),
    5: (1, 1, -1),
    6: (-1, 1, -1),
    7: (-1, 1, 1),
    8: (1, 1, 1),
}

_OCTAHEDRON_COORDS = {
    1: (-1, 0, 0),
    2: (0, -1, 0),
    3: (0, 0, 1),
    4: (1, 0, 0),
    5: (0, 1, 0),
    6: (0, 0, -1),
}


def _coordinate_perm(coords: dict[int, tuple[int, int, int]], fn) -> Perm:
    lookup = {v: k for k, v in coords.items()}
    return tuple(lookup[fn(coords[j])] for j in sorted(coords))


# rotation by a quarter turn about the vertical axis, three-fold rotation
# about a body diagonal, and point inversion; together they generate O_h
_SOLID_MAPS = (
    lambda p: (p[2], p[1], -p[0]),
    lambda p: (p[1], p[2], p[0]),
    lambda p: (-p[0], -p[1], -p[2]),
)


def _polygon(K: int, kind: str) -> Geometry:
    k = K // 2
    rotation = tuple(list(range(2, K + 1)) + [1])
    reflection = tuple([1] + list(range(K, 1, -1)))
    gens = (rotation, reflection)
    runs = [tuple(((s - 1 + t) % K) + 1 for t in range(k)) for s in range(1, k + 1)]
    geo = Geometry(
        kind=kind,
        K=K,
        diagonals=tuple((j, j + k) for j in range(1, k + 1)),
        edges=tuple((j, j % K + 1) if j < K else (1, K) for j in range(1, K + 1)),
        generators=gens,
        symmetry_group=tuple(symmetry_group_closure(gens)),
        bipartitions=(),
        edge_outputs=tuple(range(K, k, -1)),
    )
    bips = tuple(geo.normalize_subset(r) for r in runs)
    return replace(geo, bipartitions=bips)


def _cube() -> Geometry:
    c = _CUBE_COORDS
    gens = tuple(_coordinate_perm(c, fn) for fn in _SOLID_MAPS)
    edges = tuple(
        (a, b)
        for a, b in combinations(sorted(c), 2)
        if sum(x != y for x, y in zip(c[a], c[b])) == 1
    )
    # faces through site 1, one for each pair of parallel faces
    faces = []
    for axis in range(3):
        value = c[1][axis]
        faces.append(tuple(j for j in sorted(c) if c[j][axis] == value))
    return Geometry(
        kind="cube",
        K=8,
        diagonals=tuple((j, j + 4) for j in range(1, 5)),
        edges=edges,
        generators=gens,
        symmetry_group=tuple(symmetry_group_closure(gens)),
        bipartitions=tuple(sorted(faces)),
        edge_outputs=(7, 8, 5, 6),
    )


def _octahedron() -> Geometry:
    c = _OCTAHEDRON_COORDS
    gens = tuple(_coordinate_perm(c, fn) for fn in _SOLID_MAPS)
    diagonals = ((1, 4), (2, 5), (3, 6))
    antipodes = set(diagonals)
    edges = tuple(p for p in combinations(range(1, 7), 2) if p not in antipodes)
    bips = tuple(sorted((1,) + rest for rest in product((2, 5), (3, 6))))
    bips = tuple(sorted(tuple(sorted(b)) for b in bips))
    return Geometry(
        kind="octahedron",
        K=6,
        diagonals=diagonals,
        edges=edges,
        generators=gens,
        symmetry_group=tuple(symmetry_group_closure(gens)),
        bipartitions=bips,
        edge_outputs=None,
    )


def _tetrahedron() -> Geometry:
    gens = ((2, 1, 3, 4), (2, 3, 4, 1))
    return Geometry(
        kind="tetrahedron",
        K=4,
        diagonals=(),
        edges=tuple(combinations(range(1, 5), 2)),
        generators=gens,
        symmetry_group=tuple(symmetry_group_closure(gens)),
        bipartitions=((1, 2), (1, 3), (1, 4)),
        edge_outputs=None,
    )


_CACHE: dict[tuple[str, int | None], Geometry] = {}


def build_geometry(kind: str, k_for_polygon: int | None = None) -> Geometry:
    """Build one of the supported arrangements.

    ``kind`` may also be given in the external form ``"polygon:<2k>"``.  For
    ``polygon`` the parameter is the number of sites ``2k`` and must be even
    and at least 4.

    >>> g = build_geometry("square")
    >>> g.K, g.bipartitions, g.order
    (4, ((1, 2), (1, 4)), 8)
    """
    if kind.startswith("polygon:"):
        kind, _, num = kind.partition(":")
        try:
            k_for_polygon = int(num)
        except ValueError:
            raise ValueError(f"bad polygon size {num!r}") from None
    if kind not in KINDS:
        raise ValueError(f"unknown geometry kind {kind!r}")
    key = (kind, k_for_polygon if kind == "polygon" else None)
    if key in _CACHE:
        return _CACHE[key]

    if kind == "square":
        geo = _polygon(4, "square")
    elif kind == "hexagon":
        geo = _polygon(6, "hexagon")
    elif kind == "polygon":
        if k_for_polygon is None:
            raise ValueError("polygon requires its number of sites")
        if k_for_polygon % 2 or k_for_polygon < 4:
            raise ValueError(f"polygon needs an even number of sites >= 4, got {k_for_polygon}")
        geo = _polygon(k_for_polygon, "polygon")
    elif kind == "cube":
        geo = _cube()
    elif kind == "octahedron":
        geo = _octahedron()
    else:
        geo = _tetrahedron()
    _CACHE[key] = geo
    return geo


def parse_geometry(name: str) -> Geometry:
    """Parse the external geometry name (``square``, ``polygon:8``, ...)."""
    return build_geometry(name.strip())


def all_geometry_names() -> list[str]:
    return ["square", "hexagon", "cube", "octahedron", "tetrahedron"]


def diagonal_bipartition(geometry: Geometry) -> Subset:
    """The input half ``{1, ..., K/2}`` of the diagonal operator convention."""
    return tuple(range(1, geometry.half + 1))


def transpose_positions(geometry: Geometry, subset: Iterable[int]) -> tuple[int, ...]:
    """Partial-transpose positions whose unitarity encodes a bipartition.

    For a subset holding one endpoint of each diagonal, the operator ``U^{t_T}``
    with ``T = {j : j + K/2 in subset}`` maps the subset's sites to the rest.
    """
    h = geometry.half
    s = set(subset)
    if geometry.diagonals:
        for a, b in geometry.diagonals:
            if (a in s) == (b in s):
                raise ValueError(f"subset {sorted(s)} does not split diagonal {(a, b)}")
    else:
        for j in range(1, h + 1):
            if (j in s) == (j + h in s):
                raise ValueError(f"subset {sorted(s)} does not split pair {(j, j + h)}")
    return tuple(j for j in range(1, h + 1) if j + h in s)


def all_site_permutations(K: int) -> list[Perm]:
    return [tuple(p) for p in permutations(range(1, K + 1))]
