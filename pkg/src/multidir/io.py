"""JSON and text formats for states, operators, incidence graphs and solutions.

Output is byte-stable: keys are sorted, floats use Python's shortest
round-trip ``repr`` and ``-0.0`` is written as ``0.0``.  Only entries with
modulus above :data:`ZERO_TOL` are listed.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .geometry import Geometry, parse_geometry
from .statecore import OperatorMatrix, PureState

ZERO_TOL = 1e-13


class FormatError(ValueError):
    """Malformed or inconsistent input file."""


def _clean(x: float) -> float:
    x = float(x)
    return 0.0 if x == 0 else x


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _flat_index_to_config(i: int, N: int, K: int) -> list[int]:
    return [int(v) + 1 for v in np.unravel_index(i, (N,) * K)]


def state_to_dict(state: PureState, geometry: Geometry) -> dict:
    entries = []
    for i in np.flatnonzero(np.abs(state.amplitudes) > ZERO_TOL):
        a = state.amplitudes[i]
        entries.append(
            {"config": _flat_index_to_config(int(i), state.N, state.K), "re": _clean(a.real), "im": _clean(a.imag)}
        )
    return {"geometry": geometry.name, "N": state.N, "K": state.K, "amplitudes": entries}


def operator_to_dict(op: OperatorMatrix, geometry: Geometry) -> dict:
    entries = []
    for b, a in zip(*np.nonzero(np.abs(op.matrix) > ZERO_TOL)):
        x = op.matrix[b, a]
        entries.append(
            {
                "out": _flat_index_to_config(int(b), op.N, op.half_K),
                "in": _flat_index_to_config(int(a), op.N, op.half_K),
                "re": _clean(x.real),
                "im": _clean(x.imag),
            }
        )
    return {
        "geometry": geometry.name,
        "N": op.N,
        "half_K": op.half_K,
        "convention": op.convention,
        "entries": entries,
    }


def _require(d: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in d]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}")


def _config_index(config, N: int, length: int) -> tuple[int, ...]:
    if len(config) != length or any(not isinstance(v, int) or not 1 <= v <= N for v in config):
        raise FormatError(f"bad configuration {config} for N={N}, length {length}")
    return tuple(v - 1 for v in config)


def state_from_dict(d: dict) -> tuple[PureState, Geometry]:
    _require(d, "geometry", "N", "K", "amplitudes")
    try:
        geometry = parse_geometry(d["geometry"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    N, K = int(d["N"]), int(d["K"])
    if K != geometry.K:
        raise FormatError(f"K={K} does not match {geometry.name} (K={geometry.K})")
    if N < 1:
        raise FormatError("N must be positive")
    psi = np.zeros((N,) * K, dtype=complex)
    for e in d["amplitudes"]:
        _require(e, "config", "re", "im")
        psi[_config_index(e["config"], N, K)] = complex(e["re"], e["im"])
    return PureState(N, K, psi.reshape(-1)), geometry


def operator_from_dict(d: dict) -> tuple[OperatorMatrix, Geometry]:
    _require(d, "geometry", "N", "half_K", "convention", "entries")
    try:
        geometry = parse_geometry(d["geometry"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    N, h = int(d["N"]), int(d["half_K"])
    if 2 * h != geometry.K:
        raise FormatError(f"half_K={h} does not match {geometry.name}")
    m = np.zeros((N,) * (2 * h), dtype=complex)
    for e in d["entries"]:
        _require(e, "out", "in", "re", "im")
        m[_config_index(e["out"], N, h) + _config_index(e["in"], N, h)] = complex(e["re"], e["im"])
    try:
        op = OperatorMatrix(N, h, m.reshape(N**h, N**h), d["convention"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return op, geometry


def load_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def load_state(path: str | Path) -> tuple[PureState, Geometry]:
    """Read a state file, or an operator file converted to its state."""
    from .statecore import state_from_operator

    d = load_json(path)
    if not isinstance(d, dict):
        raise FormatError("top-level JSON value must be an object")
    if "entries" in d:
        op, geometry = operator_from_dict(d)
        return state_from_operator(op, geometry), geometry
    return state_from_dict(d)


def incidence_from_dict(d: dict):
    from .constructions import IncidenceGraph

    _require(d, "K", "labels")
    if len(d["labels"]) != d["K"]:
        raise FormatError(f"incidence matrix has {len(d['labels'])} rows, expected K={d['K']}")
    try:
        return IncidenceGraph.from_matrix(d["labels"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def incidence_to_dict(graph) -> dict:
    return {"K": graph.K, "labels": [list(row) for row in graph.labels]}


def phases_from_json(obj, geometry: Geometry) -> np.ndarray:
    """Phase table: a nested list of shape ``(N,)*(K/2)`` or ``{"phases": [...]}``."""
    if isinstance(obj, dict):
        _require(obj, "phases")
        obj = obj["phases"]
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"phase table is not numeric: {exc}") from exc
    if arr.ndim != geometry.half or len(set(arr.shape)) != 1:
        raise FormatError(f"phase table must have shape (N,)*{geometry.half}, got {arr.shape}")
    return arr
