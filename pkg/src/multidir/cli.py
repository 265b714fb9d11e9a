"""Command-line entry point ``multidir``.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np

from . import classical
from . import constructions as cons
from .geometry import Geometry, parse_geometry
from .io import (
    FormatError,
    dumps,
    incidence_from_dict,
    load_json,
    load_state,
    operator_to_dict,
    phases_from_json,
    state_to_dict,
)
from .statecore import (
    OperatorMatrix,
    diagonal_entanglement,
    entanglement_deviation,
    is_absolutely_maximally_entangled,
    is_spatially_symmetric,
    state_from_operator,
    von_neumann_entropy,
)

logger = logging.getLogger("multidir")

CONSTRUCTIONS = ("identity", "diagonal", "cartan", "kicked-ising", "hadamard-square", "hadamard-cube", "graph")


class UsageError(Exception):
    pass


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _floats(text: str | None) -> list[float]:
    if not text:
        return []
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--params must be comma-separated numbers: {text!r}") from exc


def _ints(text: str | None) -> list[int]:
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise UsageError(f"--params must be integers here: {text!r}")
    return [int(v) for v in vals]


def _hadamard(name: str, N: int) -> np.ndarray:
    if name == "f2i":
        if N != 2:
            raise UsageError("--hadamard f2i needs --n 2")
        return cons.HADAMARD_F2I
    return cons.fourier_hadamard(N)


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def _construct(args) -> tuple[object, Geometry]:
    """Return an OperatorMatrix or PureState together with its geometry."""
    kind = args.type
    N = args.n
    if kind == "kicked-ising":
        return cons.kicked_ising_gate(), parse_geometry("square")
    if kind == "cartan":
        vals = _floats(args.params) or [0.0, math.pi / 4]
        if len(vals) != 2:
            raise UsageError("cartan takes --params phi,alpha")
        phi, alpha = vals
        return cons.cartan_dual_unitary(phi, alpha), parse_geometry("square")
    if not args.geometry:
        raise UsageError(f"{kind} needs --geometry")
    geometry = parse_geometry(args.geometry)
    if N is None and kind != "diagonal":
        raise UsageError(f"{kind} needs --n")
    if kind == "identity":
        return cons.identity_state(geometry, N), geometry
    if kind == "diagonal":
        if args.phases:
            phases = phases_from_json(load_json(args.phases), geometry)
            if not cons.is_symmetric_phase_table(geometry, phases):
                logger.warning("phase table is not invariant under the symmetry group")
            return cons.diagonal_gate(geometry, phases), geometry
        if geometry.kind == "hexagon" and args.params:
            gamma, delta = _floats(args.params)
            return cons.hexagonal_qubit_diagonal(gamma, delta), geometry
        raise UsageError("diagonal needs --phases FILE (or --params gamma,delta on the hexagon)")
    if kind == "hadamard-square":
        if geometry.kind != "square":
            raise UsageError("hadamard-square needs --geometry square")
        return cons.hadamard_square(_hadamard(args.hadamard, N)), geometry
    if kind == "hadamard-cube":
        if geometry.kind != "cube":
            raise UsageError("hadamard-cube needs --geometry cube")
        return cons.hadamard_cube(_hadamard(args.hadamard, N)), geometry
    if kind == "graph":
        if args.incidence:
            graph = incidence_from_dict(load_json(args.incidence))
            if graph.K != geometry.K:
                raise UsageError(f"incidence graph has K={graph.K}, {geometry.name} has K={geometry.K}")
        else:
            graph = cons.symmetric_incidence(geometry, _ints(args.params))
        return cons.graph_state(graph, N), geometry
    raise UsageError(f"unknown construction {kind!r}")


def cmd_construct(args) -> int:
    obj, geometry = _construct(args)
    if isinstance(obj, OperatorMatrix):
        payload = state_to_dict(state_from_operator(obj, geometry), geometry) if args.state else operator_to_dict(obj, geometry)
    else:
        payload = state_to_dict(obj, geometry)
    _emit(dumps(payload), args.output)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def verification_report(state, geometry: Geometry, tol: float, ame: bool = False) -> dict:
    rows = []
    for A in geometry.bipartitions:
        dev = entanglement_deviation(state, A)
        rows.append(
            {
                "subset": list(A),
                "deviation": dev,
                "passed": dev <= tol,
                "entropy": von_neumann_entropy(state, A),
            }
        )
    report = {
        "geometry": geometry.name,
        "N": state.N,
        "tol": tol,
        "bipartitions": rows,
        "spatially_symmetric": is_spatially_symmetric(state, geometry, tol),
        "max_entropy": geometry.half * math.log(state.N),
    }
    if geometry.diagonals:
        report["diagonal_entanglement"] = diagonal_entanglement(state, geometry)
    if ame:
        report["ame"] = is_absolutely_maximally_entangled(state, tol)
    report["passed"] = all(r["passed"] for r in rows) and report.get("ame", True)
    return report


def _report_text(report: dict) -> str:
    lines = [f"geometry {report['geometry']}  N={report['N']}  tol={report['tol']:g}"]
    lines.append(f"{'subset':<14}{'deviation':>12}{'entropy':>12}  verdict")
    for r in report["bipartitions"]:
        subset = "{" + ",".join(map(str, r["subset"])) + "}"
        verdict = "pass" if r["passed"] else "FAIL"
        lines.append(f"{subset:<14}{r['deviation']:>12.3e}{r['entropy']:>12.6f}  {verdict}")
    lines.append(f"max entropy        {report['max_entropy']:.6f}")
    lines.append(f"spatially symmetric {'yes' if report['spatially_symmetric'] else 'no'}")
    if "diagonal_entanglement" in report:
        lines.append(f"diagonal entanglement {report['diagonal_entanglement']:.6f}")
    if "ame" in report:
        lines.append(f"AME {'yes' if report['ame'] else 'no'}")
    lines.append("PASS" if report["passed"] else "FAIL")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    state, geometry = load_state(args.file)
    if args.geometry and parse_geometry(args.geometry).name != geometry.name:
        raise FormatError(f"file is for {geometry.name}, not {args.geometry}")
    if args.n is not None and args.n != state.N:
        raise FormatError(f"file has N={state.N}, not {args.n}")
    if not state.is_normalized(1e-6):
        logger.warning("state norm is %.12g", state.norm)
    report = verification_report(state, geometry, args.tol, args.ame)
    _emit(dumps(report) if args.format == "json" else _report_text(report), args.output)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# classical solutions
# ---------------------------------------------------------------------------


def _classes_payload(geometry, N, classes) -> dict:
    return {
        "geometry": geometry.name,
        "N": N,
        "classes": [
            {"representative": c.representative.notation, "members": [m.notation for m in c.members]}
            for c in classes
        ],
    }


def _classes_text(classes) -> str:
    return "".join(f"{i}. {c.representative.notation}  ({len(c.members)} solutions)\n" for i, c in enumerate(classes, 1))


def cmd_enumerate(args) -> int:
    geometry = parse_geometry(args.geometry)
    if args.classify:
        return cmd_classify(args)
    sols = classical.enumerate_solutions(geometry, args.n, jobs=args.jobs)
    if args.full:
        payload = [state_to_dict(classical.solution_to_state(s), geometry) for s in sols]
        _emit(dumps(payload), args.output)
    elif args.format == "json":
        _emit(dumps({"geometry": geometry.name, "N": args.n, "solutions": [s.notation for s in sols]}), args.output)
    else:
        _emit("".join(s.notation + "\n" for s in sols), args.output)
    return 0


def cmd_classify(args) -> int:
    geometry = parse_geometry(args.geometry)
    if getattr(args, "map_hexagonal", False) and geometry.kind != "octahedron":
        raise UsageError("--map-hexagonal needs --geometry octahedron")
    classes = classical.classify(geometry, args.n, jobs=args.jobs)
    mapping = classical.octahedral_hexagonal_map(args.n, jobs=args.jobs) if getattr(args, "map_hexagonal", False) else None
    if args.format == "json":
        payload = _classes_payload(geometry, args.n, classes)
        if mapping is not None:
            payload["hexagonal_map"] = {str(k): v for k, v in mapping.items()}
        _emit(dumps(payload), args.output)
    else:
        text = _classes_text(classes)
        if mapping is not None:
            text += "hexagonal map: " + ", ".join(f"{k}:{v}" for k, v in mapping.items()) + "\n"
        _emit(text, args.output)
    return 0


def cmd_expand(args) -> int:
    geometry = parse_geometry(args.geometry)
    sol = classical.expand_compact_notation(",".join(args.labels), geometry, args.n)
    state = classical.solution_to_state(sol)
    if args.format == "text":
        lines = [f"{len(sol.support)} configurations, amplitude N^(-K/4) = {args.n ** (-geometry.K / 4):.12g}"]
        for o in sol.orbits:
            lines.append("(" + " + ".join(classical.format_label(c) for c in o.members) + ")")
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit(dumps(state_to_dict(state, geometry)), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multidir", description="Multi-directional unitary operators and their states.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, geometry_required=True, n_required=True, default_format="text"):
        sp.add_argument("--geometry", required=geometry_required, help="square, hexagon, polygon:<2k>, cube, octahedron, tetrahedron")
        sp.add_argument("--n", type=int, required=n_required, help="local dimension")
        sp.add_argument("--format", choices=("json", "text"), default=default_format)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    c = sub.add_parser("construct", help="build a state or operator file")
    c.add_argument("--type", required=True, choices=CONSTRUCTIONS)
    common(c, geometry_required=False, n_required=False, default_format="json")
    c.add_argument("--params", help="comma-separated parameters (graph labels, cartan phi,alpha, hexagon gamma,delta)")
    c.add_argument("--phases", help="JSON phase table for --type diagonal")
    c.add_argument("--incidence", help='JSON incidence graph {"K": k, "labels": [[...]]} for --type graph')
    c.add_argument("--hadamard", choices=("fourier", "f2i"), default="fourier", help="edge matrix for Hadamard gates")
    c.add_argument("--state", action="store_true", help="write the state of an operator construction")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check maximal entanglement of a state or operator file")
    v.add_argument("file")
    common(v, geometry_required=False, n_required=False)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--ame", action="store_true", help="also check every bipartition (AME)")
    v.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("enumerate", cmd_enumerate, "list spatially symmetric classical solutions"),
        ("classify", cmd_classify, "strong equivalence classes of classical solutions"),
    ):
        e = sub.add_parser(name, help=helptext)
        common(e)
        e.add_argument("--jobs", type=int, default=1)
        e.add_argument("--map-hexagonal", action="store_true", help="octahedron: matching hexagonal class numbers")
        if name == "enumerate":
            e.add_argument("--classify", action="store_true")
            e.add_argument("--full", action="store_true", help="write every solution as state JSON")
        e.set_defaults(func=func)

    x = sub.add_parser("expand", help="expand compact orbit notation into a state")
    common(x, default_format="json")
    x.add_argument("labels", nargs="*", help='e.g. "[1424],[3344]"; nothing or "Identity" for the identity')
    x.set_defaults(func=cmd_expand)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError) as exc:
        print(f"multidir: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
