"""Algorithm X over dict-of-sets, enumerating every exact cover.

Columns are chosen by fewest candidate rows (ties: smallest column key), so
the enumeration order is deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterator, Mapping, Sequence


def _build(universe, rows):
    cols: dict[Hashable, set] = {c: set() for c in universe}
    for r, cs in rows.items():
        for c in cs:
            if c not in cols:
                raise KeyError(f"row {r!r} covers {c!r} outside the universe")
            cols[c].add(r)
    return cols


def _select(cols, rows, r):
    removed = []
    for j in rows[r]:
        for i in cols[j]:
            for k in rows[i]:
                if k != j:
                    cols[k].discard(i)
        removed.append(cols.pop(j))
    return removed


def _deselect(cols, rows, r, removed):
    for j in reversed(rows[r]):
        cols[j] = removed.pop()
        for i in cols[j]:
            for k in rows[i]:
                if k != j:
                    cols[k].add(i)


def _search(cols, rows, partial) -> Iterator[list]:
    if not cols:
        yield list(partial)
        return
    c = min(cols, key=lambda k: (len(cols[k]), k))
    for r in sorted(cols[c]):
        partial.append(r)
        removed = _select(cols, rows, r)
        yield from _search(cols, rows, partial)
        _deselect(cols, rows, r, removed)
        partial.pop()


def exact_covers(universe: Sequence[Hashable], rows: Mapping[Hashable, Sequence[Hashable]]) -> Iterator[list]:
    """Yield every set of row keys whose column sets partition ``universe``."""
    rows = {r: list(cs) for r, cs in rows.items()}
    cols = _build(universe, rows)
    yield from _search(cols, rows, [])


def first_column_branches(universe, rows) -> tuple[Hashable | None, list]:
    """The column the search branches on first, and its candidate rows."""
    rows = {r: list(cs) for r, cs in rows.items()}
    cols = _build(universe, rows)
    if not cols:
        return None, []
    c = min(cols, key=lambda k: (len(cols[k]), k))
    return c, sorted(cols[c])


def exact_covers_with(universe, rows, forced) -> Iterator[list]:
    """Exact covers that contain row ``forced``."""
    rows = {r: list(cs) for r, cs in rows.items()}
    cols = _build(universe, rows)
    _select(cols, rows, forced)
    yield from _search(cols, rows, [forced])
