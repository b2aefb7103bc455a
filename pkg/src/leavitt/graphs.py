"""Finite directed multigraphs and the purely-infinite-simple conditions.

Parallel edges are stored as a single record with a multiplicity, so the
data model is canonical: at most one (source, target) record per ordered
pair.  Vertex order in the file is the basis order for every matrix derived
from the graph, which keeps all downstream output reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .intmat import IntMatrix


class GraphFormatError(ValueError):
    """Raised for malformed graph documents."""


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    def __post_init__(self):
        if not self.vertices:
            raise GraphFormatError("vertex list must be nonempty")
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v:
                raise GraphFormatError("vertex names must be nonempty strings")
            if v in seen:
                raise GraphFormatError(f"duplicate vertex name {v!r}")
            seen.add(v)
        pairs = set()
        for src, dst, mult in self.edges:
            if src not in seen or dst not in seen:
                raise GraphFormatError(f"edge ({src!r}, {dst!r}) references an unknown vertex")
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
                raise GraphFormatError("edge multiplicities must be positive integers")
            if (src, dst) in pairs:
                raise GraphFormatError(f"duplicate edge record for ({src!r}, {dst!r})")
            pairs.add((src, dst))

    def out_edges(self) -> dict[str, list[tuple[str, int]]]:
        out: dict[str, list[tuple[str, int]]] = {v: [] for v in self.vertices}
        for src, dst, mult in self.edges:
            out[src].append((dst, mult))
        return out

    def out_degree(self, vertex: str) -> int:
        """Total number of edges leaving vertex, counted with multiplicity."""
        return sum(mult for src, _, mult in self.edges if src == vertex)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[src, dst, mult] for src, dst, mult in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class PisReport:
    every_cycle_has_exit: bool
    trivial_hereditary_saturated: bool
    every_vertex_connects_to_cycle: bool
    purely_infinite_simple: bool

    def __post_init__(self):
        expected = (
            self.every_cycle_has_exit
            and self.trivial_hereditary_saturated
            and self.every_vertex_connects_to_cycle
        )
        if self.purely_infinite_simple != expected:
            raise ValueError("purely_infinite_simple must be the conjunction of the flags")


def build_graph(
    vertices: Iterable[str], edges: Iterable[tuple[str, str, int]]
) -> DirectedGraph:
    """Build a graph, merging duplicate (source, target) records by summing."""
    merged: dict[tuple[str, str], int] = {}
    order: list[tuple[str, str]] = []
    for src, dst, mult in edges:
        key = (src, dst)
        if key in merged:
            merged[key] += mult
        else:
            merged[key] = mult
            order.append(key)
    return DirectedGraph(
        tuple(vertices), tuple((s, d, merged[(s, d)]) for s, d in order)
    )


def parse_graph(text: str) -> DirectedGraph:
    """Parse the JSON graph document {"vertices": [...], "edges": [...]}.

    Edge records are [src, dst] or [src, dst, multiplicity]; a missing
    multiplicity means 1.  Duplicate records are merged by summing.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("graph document must be a JSON object")
    unknown = set(doc) - {"vertices", "edges"}
    if unknown:
        raise GraphFormatError(f"unknown keys in graph document: {sorted(unknown)}")
    vertices = doc.get("vertices")
    raw_edges = doc.get("edges", [])
    if not isinstance(vertices, list):
        raise GraphFormatError('"vertices" must be a list of names')
    if not isinstance(raw_edges, list):
        raise GraphFormatError('"edges" must be a list of edge records')
    edges = []
    for record in raw_edges:
        if not isinstance(record, list) or len(record) not in (2, 3):
            raise GraphFormatError(f"edge record must be [src, dst] or [src, dst, mult]: {record!r}")
        src, dst = record[0], record[1]
        mult = record[2] if len(record) == 3 else 1
        if not isinstance(src, str) or not isinstance(dst, str):
            raise GraphFormatError(f"edge endpoints must be strings: {record!r}")
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise GraphFormatError(f"edge multiplicity must be an integer: {record!r}")
        if mult < 1:
            raise GraphFormatError(f"edge multiplicity must be positive: {record!r}")
        edges.append((src, dst, mult))
    return build_graph(vertices, edges)


def rose(petals: int) -> DirectedGraph:
    """One vertex with the given number of loops."""
    if petals < 0:
        raise ValueError("petal count must be nonnegative")
    edges = (("v", "v", petals),) if petals else ()
    return DirectedGraph(("v",), edges)


def adjacency_matrix(graph: DirectedGraph) -> IntMatrix:
    """Entry (i, j) counts the edges from vertex i to vertex j."""
    pos = {v: i for i, v in enumerate(graph.vertices)}
    n = len(graph.vertices)
    rows = [[0] * n for _ in range(n)]
    for src, dst, mult in graph.edges:
        rows[pos[src]][pos[dst]] += mult
    return IntMatrix(rows)


def _strongly_connected_components(graph: DirectedGraph) -> list[set[str]]:
    # Tarjan, iterative to survive long chains.
    succ = {v: [] for v in graph.vertices}
    for src, dst, _ in graph.edges:
        succ[src].append(dst)
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = 0
    components: list[set[str]] = []

    for root in graph.vertices:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def every_cycle_has_exit(graph: DirectedGraph) -> bool:
    """Condition (L): no cycle consists solely of vertices with one out-edge.

    A violating cycle is exactly a strongly connected component in which
    every vertex has total out-degree 1 and that single edge stays inside
    the component.
    """
    out = graph.out_edges()
    for comp in _strongly_connected_components(graph):
        violating = True
        for v in comp:
            edges = out[v]
            if len(edges) != 1 or edges[0][1] != 1 or edges[0][0] not in comp:
                violating = False
                break
        if violating:
            return False
    return True


def _hereditary_saturated_closure(graph: DirectedGraph, seed: str) -> set[str]:
    targets = {v: set() for v in graph.vertices}
    for src, dst, _ in graph.edges:
        targets[src].add(dst)
    closure = {seed}
    changed = True
    while changed:
        changed = False
        for v in list(closure):
            for t in targets[v]:
                if t not in closure:
                    closure.add(t)
                    changed = True
        for v in graph.vertices:
            if v not in closure and targets[v] and targets[v] <= closure:
                closure.add(v)  # non-sink with all targets inside
                changed = True
    return closure


def trivial_hereditary_saturated(graph: DirectedGraph) -> bool:
    """True iff the only hereditary saturated vertex sets are trivial.

    Checks that the hereditary-saturated closure of each single vertex is
    the whole vertex set; any proper nonempty hereditary saturated set
    would contain such a closure.
    """
    full = set(graph.vertices)
    return all(
        _hereditary_saturated_closure(graph, v) == full for v in graph.vertices
    )


def every_vertex_connects_to_cycle(graph: DirectedGraph) -> bool:
    """True iff every vertex has a directed path to some vertex on a cycle."""
    comp_of: dict[str, int] = {}
    components = _strongly_connected_components(graph)
    for i, comp in enumerate(components):
        for v in comp:
            comp_of[v] = i
    self_loops = {src for src, dst, _ in graph.edges if src == dst}
    on_cycle = set()
    for comp in components:
        if len(comp) > 1:
            on_cycle |= comp
    on_cycle |= self_loops
    # walk the reversed edges from all cycle vertices
    preds: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for src, dst, _ in graph.edges:
        preds[dst].append(src)
    reached = set(on_cycle)
    frontier = list(on_cycle)
    while frontier:
        v = frontier.pop()
        for p in preds[v]:
            if p not in reached:
                reached.add(p)
                frontier.append(p)
    return reached == set(graph.vertices)


def purely_infinite_simple(graph: DirectedGraph) -> PisReport:
    """Graph conditions for L(E) to be purely infinite simple (E finite)."""
    exit_flag = every_cycle_has_exit(graph)
    hs_flag = trivial_hereditary_saturated(graph)
    cycle_flag = every_vertex_connects_to_cycle(graph)
    return PisReport(
        every_cycle_has_exit=exit_flag,
        trivial_hereditary_saturated=hs_flag,
        every_vertex_connects_to_cycle=cycle_flag,
        purely_infinite_simple=exit_flag and hs_flag and cycle_flag,
    )
