"""Command-line interface: JSON in, one JSON document out, fixed exit codes.

Exit codes: 0 success, 2 malformed input, 3 hypothesis not satisfied (the
graph is not purely infinite simple), 4 enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .abelian import (
    DEFAULT_SIZE_BOUND,
    BoundExceeded,
    FGAbelianGroup,
    INFINITE,
    automorphism_maps_x_to_y,
    eigen_search,
    element_order,
    gcd_criterion,
    scale,
)
from .graphs import DirectedGraph, GraphFormatError, parse_graph, purely_infinite_simple
from .intmat import IntMatrix, smith_normal_form
from .ktheory import k0_of_graph
from .matrixtype import (
    IsoReason,
    NotPurelyInfiniteSimple,
    compare_pointed_k0,
    m_graph,
    matrix_type_classes,
    matrix_type_equal,
    matrix_type_verdict,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_BOUND = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> DirectedGraph:
    return parse_graph(_read_text(path))


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from exc


def _order_json(order) -> object:
    return "infinite" if order is INFINITE else order


def _pis_json(report) -> dict:
    return {
        "every_cycle_has_exit": report.every_cycle_has_exit,
        "trivial_hereditary_saturated": report.trivial_hereditary_saturated,
        "every_vertex_connects_to_cycle": report.every_vertex_connects_to_cycle,
        "purely_infinite_simple": report.purely_infinite_simple,
    }


def _cmd_analyze(args) -> tuple[object, int]:
    graph = _load_graph(args.graph)
    report = purely_infinite_simple(graph)
    k0 = k0_of_graph(graph)
    payload = {
        "pis": _pis_json(report),
        "invariant_factors": list(k0.group.invariant_factors),
        "free_rank": k0.group.free_rank,
        "unit_coords": list(k0.unit.torsion) + list(k0.unit.free),
        "unit_order": _order_json(k0.unit_order),
    }
    return payload, EXIT_OK


def _cmd_matrix_type(args) -> tuple[object, int]:
    graph = _load_graph(args.graph)
    report = purely_infinite_simple(graph)
    k0 = k0_of_graph(graph)
    verdict = matrix_type_equal(k0, report, args.c, args.d)
    regime = matrix_type_verdict(k0, report)
    payload = {
        "verdict": verdict,
        "regime": regime.regime,
        "n": regime.unit_order,
    }
    return payload, EXIT_OK


def _cmd_classes(args) -> tuple[object, int]:
    graph = _load_graph(args.graph)
    report = purely_infinite_simple(graph)
    k0 = k0_of_graph(graph)
    return matrix_type_classes(k0, report, args.max), EXIT_OK


def _cmd_mgraph(args) -> tuple[object, int]:
    graph = _load_graph(args.graph)
    built = m_graph(graph, args.m)
    doc = built.to_json_dict()
    if args.out != "-":
        Path(args.out).write_text(json.dumps(doc) + "\n", encoding="utf-8")
    return doc, EXIT_OK


def _cmd_compare(args) -> tuple[object, int]:
    left = k0_of_graph(_load_graph(args.graph_a))
    right = k0_of_graph(_load_graph(args.graph_b))
    verdict = compare_pointed_k0(left, right, args.bound)
    payload = {
        "isomorphic": verdict.isomorphic,
        "reason": verdict.reason.value,
        "witness": verdict.witness,
    }
    code = (
        EXIT_BOUND
        if verdict.reason is IsoReason.UNDECIDED_BOUND_EXCEEDED
        else EXIT_OK
    )
    return payload, code


def _cmd_snf(args) -> tuple[object, int]:
    text = _read_text(args.file) if args.file else sys.stdin.read()
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON matrix: {exc}") from exc
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a JSON array of arrays")
    snf = smith_normal_form(IntMatrix(rows))
    payload = {
        "U": snf.U.to_lists(),
        "D": snf.D.to_lists(),
        "V": snf.V.to_lists(),
        "diagonal": list(snf.diagonal),
    }
    return payload, EXIT_OK


def _cmd_oracle_lemma1(args) -> tuple[object, int]:
    group = FGAbelianGroup(tuple(_int_list(args.factors)))
    x = group.element(_int_list(args.x))
    if args.c < 1 or args.d < 1:
        raise ValueError("c and d must be positive integers")
    n = element_order(group, x)
    criterion = gcd_criterion(n, args.c, args.d)
    brute = automorphism_maps_x_to_y(
        group, scale(group, args.c, x), scale(group, args.d, x), args.bound
    )
    payload = {
        "criterion": criterion,
        "bruteforce": brute,
        "agree": criterion == brute,
    }
    return payload, EXIT_OK


def _cmd_oracle_eigen(args) -> tuple[object, int]:
    witness = eigen_search(args.t, args.bound, _int_list(args.x), args.m, args.n)
    payload = {"witness": None if witness is None else witness.to_lists()}
    return payload, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description=(
            "K0 invariants and matrix-type decisions for Leavitt path "
            "algebras of finite directed graphs"
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="graph conditions, K0 invariants, unit order")
    p.add_argument("--graph", required=True, help="graph JSON file, or - for stdin")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("matrix-type", help="decide M_c(L(E)) = M_d(L(E))")
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_SIZE_BOUND)
    p.set_defaults(handler=_cmd_matrix_type)

    p = sub.add_parser("classes", help="partition matrix sizes 1..N into classes")
    p.add_argument("--graph", required=True)
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(handler=_cmd_classes)

    p = sub.add_parser("mgraph", help="attach heads realizing M_m(L(E))")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", required=True, help="output graph file, or - for stdout only")
    p.set_defaults(handler=_cmd_mgraph)

    p = sub.add_parser("compare", help="unit-preserving K0 isomorphism verdict")
    p.add_argument("--graph-a", required=True)
    p.add_argument("--graph-b", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_SIZE_BOUND)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("snf", help="Smith normal form with transforms")
    p.add_argument("--file", help="matrix JSON file; omitted or - reads stdin")
    p.set_defaults(handler=_cmd_snf)

    p = sub.add_parser("oracle", help="exhaustive brute-force cross-checks")
    oracle_sub = p.add_subparsers(dest="oracle", required=True)

    q = oracle_sub.add_parser(
        "lemma1", help="gcd criterion vs exhaustive automorphism search"
    )
    q.add_argument("--factors", required=True, help="invariant factors, e.g. 2,4")
    q.add_argument("--x", required=True, help="torsion coordinates of x")
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--bound", type=int, default=DEFAULT_SIZE_BOUND)
    q.set_defaults(handler=_cmd_oracle_lemma1)

    q = oracle_sub.add_parser(
        "eigen", help="search bounded unimodular sigma with n*sigma(x) = m*x"
    )
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--bound", type=int, required=True, help="entry bound for sigma")
    q.add_argument("--x", required=True, help="integer vector, e.g. 1,0")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(handler=_cmd_oracle_eigen)

    return parser


def _emit(payload: object) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.handler(args)
    except (GraphFormatError, ValueError) as exc:
        _emit({"error": EXIT_INPUT, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPurelyInfiniteSimple as exc:
        _emit({"error": EXIT_HYPOTHESIS, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BoundExceeded as exc:
        _emit({"error": EXIT_BOUND, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    _emit(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
