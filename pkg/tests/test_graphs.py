import json
import random

import pytest

from leavitt.graphs import (
    DirectedGraph,
    GraphFormatError,
    adjacency_matrix,
    build_graph,
    every_cycle_has_exit,
    every_vertex_connects_to_cycle,
    parse_graph,
    purely_infinite_simple,
    rose,
    trivial_hereditary_saturated,
)
from leavitt.intmat import IntMatrix

from conftest import infinite_order_graph


def graph_from_matrix(matrix: IntMatrix) -> DirectedGraph:
    names = [f"v{i}" for i in range(matrix.rows)]
    edges = [
        (names[i], names[j], matrix[i][j])
        for i in range(matrix.rows)
        for j in range(matrix.cols)
        if matrix[i][j]
    ]
    return DirectedGraph(tuple(names), tuple(edges))


class TestParseGraph:
    def test_rose_with_multiplicity(self):
        g = parse_graph('{"vertices":["v"],"edges":[["v","v",2]]}')
        assert g.vertices == ("v",)
        assert g.edges == (("v", "v", 2),)

    def test_merge_duplicate_records(self):
        g = parse_graph('{"vertices":["v"],"edges":[["v","v",1],["v","v",1]]}')
        assert g == rose(2)

    def test_default_multiplicity(self):
        g = parse_graph('{"vertices":["a","b"],"edges":[["a","b"]]}')
        assert g.edges == (("a", "b", 1),)

    def test_empty_vertex_list(self):
        with pytest.raises(GraphFormatError):
            parse_graph('{"vertices":[],"edges":[]}')

    def test_errors(self):
        bad_documents = [
            "not json",
            "[1,2,3]",
            '{"vertices":["v"],"edges":[["v","w",1]]}',
            '{"vertices":["v"],"edges":[["v","v",0]]}',
            '{"vertices":["v"],"edges":[["v","v",-2]]}',
            '{"vertices":["v"],"edges":[["v","v",1.5]]}',
            '{"vertices":["v"],"edges":[["v"]]}',
            '{"vertices":["v","v"],"edges":[]}',
            '{"vertices":[""],"edges":[]}',
            '{"vertices":["v"],"edges":[], "extra": 1}',
            '{"vertices":"v","edges":[]}',
        ]
        for text in bad_documents:
            with pytest.raises(GraphFormatError):
                parse_graph(text)

    def test_roundtrip(self):
        g = infinite_order_graph()
        assert parse_graph(g.to_json()) == g


class TestAdjacencyMatrix:
    def test_rose3(self):
        assert adjacency_matrix(rose(3)).to_lists() == [[3]]

    def test_two_vertex_graph(self):
        assert adjacency_matrix(infinite_order_graph()).to_lists() == [[3, 1], [2, 2]]

    def test_no_edges(self):
        assert adjacency_matrix(rose(0)).to_lists() == [[0]]

    def test_bijective_encoding(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(1, 5)
            m = IntMatrix(
                [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
            )
            assert adjacency_matrix(graph_from_matrix(m)) == m


class TestEveryCycleHasExit:
    def test_single_loop(self):
        assert not every_cycle_has_exit(rose(1))

    def test_two_loops(self):
        assert every_cycle_has_exit(rose(2))

    def test_acyclic(self):
        assert every_cycle_has_exit(rose(0))

    def test_long_cycle_without_exit(self):
        g = build_graph(
            ["a", "b", "c"], [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)]
        )
        assert not every_cycle_has_exit(g)

    def test_long_cycle_with_exit(self):
        g = build_graph(
            ["a", "b", "c"],
            [("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("b", "b", 1)],
        )
        assert every_cycle_has_exit(g)

    def test_relabel_invariance(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(1, 5)
            names = [f"v{i}" for i in range(n)]
            edges = []
            for s in names:
                for t in names:
                    if rng.random() < 0.4:
                        edges.append((s, t, rng.randint(1, 2)))
            g = build_graph(names, edges)
            renamed = {v: f"w{i}" for i, v in enumerate(rng.sample(names, n))}
            h = build_graph(
                [renamed[v] for v in names],
                [(renamed[s], renamed[t], m) for s, t, m in edges],
            )
            assert every_cycle_has_exit(g) == every_cycle_has_exit(h)


class TestTrivialHereditarySaturated:
    def test_single_vertex(self):
        assert trivial_hereditary_saturated(rose(2))

    def test_disjoint_components(self):
        g = build_graph(["a", "b"], [("a", "a", 2), ("b", "b", 2)])
        assert not trivial_hereditary_saturated(g)

    def test_strongly_connected(self):
        assert trivial_hereditary_saturated(infinite_order_graph())

    def test_saturation_matters(self):
        # b -> a only; {a} is hereditary but not saturated, closure pulls b in
        g = build_graph(["a", "b"], [("a", "a", 2), ("b", "a", 1)])
        assert trivial_hereditary_saturated(g)
        # with an escape from b to a sink c, {a} stays proper: closure of a is {a}
        h = build_graph(
            ["a", "b", "c"], [("a", "a", 2), ("b", "a", 1), ("b", "c", 1)]
        )
        assert not trivial_hereditary_saturated(h)


class TestEveryVertexConnectsToCycle:
    def test_rose(self):
        assert every_vertex_connects_to_cycle(rose(2))

    def test_no_cycles(self):
        assert not every_vertex_connects_to_cycle(rose(0))

    def test_path_into_loop(self):
        g = build_graph(["u", "v"], [("u", "v", 1), ("v", "v", 1)])
        assert every_vertex_connects_to_cycle(g)

    def test_sink_never_connects(self):
        # a sink cannot reach a cycle, whether or not a cycle reaches it
        g = build_graph(["v", "s"], [("v", "v", 2), ("v", "s", 1)])
        assert not every_vertex_connects_to_cycle(g)
        h = build_graph(["v", "s"], [("v", "v", 2)])
        assert not every_vertex_connects_to_cycle(h)


class TestPurelyInfiniteSimple:
    def test_rose2(self):
        report = purely_infinite_simple(rose(2))
        assert report.purely_infinite_simple

    def test_rose1_fails_condition_l(self):
        report = purely_infinite_simple(rose(1))
        assert not report.every_cycle_has_exit
        assert not report.purely_infinite_simple

    def test_infinite_order_graph(self):
        assert purely_infinite_simple(infinite_order_graph()).purely_infinite_simple

    def test_conjunction(self):
        for g in (rose(0), rose(1), rose(2), infinite_order_graph()):
            report = purely_infinite_simple(g)
            assert report.purely_infinite_simple == (
                every_cycle_has_exit(g)
                and trivial_hereditary_saturated(g)
                and every_vertex_connects_to_cycle(g)
            )

    def test_random_strongly_connected_min_outdegree_two(self):
        # a strongly connected multigraph where every vertex emits >= 2 edges
        # is purely infinite simple
        rng = random.Random(17)
        for _ in range(60):
            n = rng.randint(1, 6)
            names = [f"v{i}" for i in range(n)]
            edges = {}
            for i in range(n):  # a spanning cycle keeps it strongly connected
                key = (names[i], names[(i + 1) % n])
                edges[key] = edges.get(key, 0) + 1
            for s in names:  # pad out-degrees to >= 2
                while sum(m for (a, _), m in edges.items() if a == s) < 2:
                    key = (s, rng.choice(names))
                    edges[key] = edges.get(key, 0) + 1
            for _ in range(rng.randint(0, 4)):
                key = (rng.choice(names), rng.choice(names))
                edges[key] = edges.get(key, 0) + 1
            g = build_graph(names, [(s, t, m) for (s, t), m in edges.items()])
            assert purely_infinite_simple(g).purely_infinite_simple


class TestJsonDict:
    def test_stable_serialization(self):
        g = infinite_order_graph()
        assert json.loads(g.to_json()) == g.to_json_dict()


def _random_graphs(seed, count, max_vertices=5):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_vertices)
        names = [f"v{i}" for i in range(n)]
        edges = []
        for s in names:
            for t in names:
                if rng.random() < 0.35:
                    edges.append((s, t, rng.randint(1, 2)))
        yield build_graph(names, edges)


def _simple_cycles(graph):
    """All simple cycles, as vertex sets (small graphs only)."""
    targets = {v: set() for v in graph.vertices}
    for s, t, _ in graph.edges:
        targets[s].add(t)
    cycles = []

    def walk(start, v, path):
        for w in targets[v]:
            if w == start:
                cycles.append(frozenset(path))
            elif w not in path and w > start:  # canonical start: minimal name
                walk(start, w, path + [w])

    for v in graph.vertices:
        walk(v, v, [v])
    return set(cycles)


class TestBruteForceOracles:
    """The fast predicates against literal enumeration on small graphs."""

    def test_cycle_exits_against_cycle_enumeration(self):
        for g in _random_graphs(101, 150):
            out_degree = {v: g.out_degree(v) for v in g.vertices}
            # a cycle lacks an exit iff all its vertices emit exactly one edge
            brute = not any(
                all(out_degree[v] == 1 for v in cycle)
                for cycle in _simple_cycles(g)
            )
            assert every_cycle_has_exit(g) == brute, g.to_json()

    def test_hereditary_saturated_against_subset_enumeration(self):
        import itertools

        for g in _random_graphs(102, 120):
            targets = {v: set() for v in g.vertices}
            for s, t, _ in g.edges:
                targets[s].add(t)
            names = list(g.vertices)
            brute = True
            for r in range(1, len(names)):
                for subset in itertools.combinations(names, r):
                    sset = set(subset)
                    hereditary = all(targets[v] <= sset for v in sset)
                    saturated = all(
                        v in sset
                        for v in names
                        if targets[v] and targets[v] <= sset
                    )
                    if hereditary and saturated:
                        brute = False
            assert trivial_hereditary_saturated(g) == brute, g.to_json()

    def test_connects_to_cycle_against_path_enumeration(self):
        for g in _random_graphs(103, 150):
            cycles = _simple_cycles(g)
            on_cycle = set().union(*cycles) if cycles else set()
            targets = {v: set() for v in g.vertices}
            for s, t, _ in g.edges:
                targets[s].add(t)
            brute = True
            for v in g.vertices:
                seen = {v}
                frontier = [v]
                while frontier:
                    u = frontier.pop()
                    for w in targets[u]:
                        if w not in seen:
                            seen.add(w)
                            frontier.append(w)
                if not seen & on_cycle:
                    brute = False
            assert every_vertex_connects_to_cycle(g) == brute, g.to_json()
