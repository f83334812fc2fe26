import random

import pytest

from movability.catalog import (
    catalog_graph,
    graph_with_unicolor_path,
    graph_without_nac,
    ring_of_complete_bipartite,
)
from movability.graphs import Graph, edge
from movability.nac import (
    EnumerationCapExceeded,
    NacColoring,
    constant_distance_closure,
    conjugate,
    edge_signatures,
    enumerate_nac,
    is_nac,
    unicolor_pairs,
)

from conftest import random_connected_graph


# -- the brute-force cycle oracle ---------------------------------------------


def all_simple_cycles(g: Graph):
    """Every simple cycle exactly once (lowest vertex first, fixed orientation)."""
    adj = g.adjacency()
    cycles = []

    def extend(path, visited):
        s, u = path[0], path[-1]
        for w in sorted(adj[u]):
            if w == s and len(path) >= 3:
                if path[1] < path[-1]:
                    cycles.append(tuple(path))
            elif w > s and w not in visited:
                visited.add(w)
                path.append(w)
                extend(path, visited)
                path.pop()
                visited.remove(w)

    for s in range(g.n):
        extend([s], {s})
    return cycles


def oracle_is_nac(g: Graph, coloring: NacColoring) -> bool:
    """Definition checked literally: surjective, every cycle unicolor or
    carrying at least two edges of each color."""
    if not coloring.red or not coloring.blue:
        return False
    for cycle in all_simple_cycles(g):
        edges = [edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        reds = sum(1 for e in edges if e in coloring.red)
        blues = len(edges) - reds
        if 0 < reds < 2 or 0 < blues < 2:
            if reds and blues:
                return False
    return True


def exhaustive_nac_count(g: Graph) -> int:
    edges = g.sorted_edges()
    count = 0
    for mask in range(1 << len(edges)):
        red = frozenset(e for k, e in enumerate(edges) if mask >> k & 1)
        if is_nac(g, NacColoring(g, red)):
            count += 1
    return count


def random_coloring(g: Graph, rng) -> NacColoring:
    return NacColoring(
        g, frozenset(e for e in g.edges if rng.random() < 0.5)
    )


# -- is_nac ---------------------------------------------------------------------


def test_is_nac_matches_cycle_oracle(rng):
    for _ in range(150):
        g = random_connected_graph(rng, rng.randint(3, 7), extra_edges=rng.randint(0, 4))
        if len(g.edges) > 12:
            continue
        c = random_coloring(g, rng)
        assert is_nac(g, c) == oracle_is_nac(g, c)


def test_deltoid_coloring_of_table():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    # 12 and 23 blue, 34 and 14 red
    delta1 = NacColoring(c4, frozenset({(2, 3), (0, 3)}))
    assert is_nac(c4, delta1)


def test_triangle_never_nac():
    k3 = Graph.of(3, [(0, 1), (1, 2), (0, 2)])
    for red in ({(0, 1)}, {(0, 1), (1, 2)}):
        assert not is_nac(k3, NacColoring(k3, frozenset(red)))
    assert not is_nac(k3, NacColoring(k3, frozenset()))  # not surjective


def test_four_cycle_single_red_edge_rejected():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert not is_nac(c4, NacColoring(c4, frozenset({(0, 1)})))


def test_is_nac_rejects_partial_coloring():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(ValueError):
        is_nac(c4, {(0, 1): "red"})


# -- enumeration ----------------------------------------------------------------


def test_four_cycle_has_six_colorings():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    full = enumerate_nac(c4)
    assert len(full) == 6
    assert len(enumerate_nac(c4, non_conjugated=True)) == 3
    assert all(is_nac(c4, c) for c in full)


def test_no_nac_graph_enumerates_empty():
    assert enumerate_nac(graph_without_nac()) == []


def test_unicolor_path_graph_has_three_representatives():
    g = graph_with_unicolor_path()
    reps = enumerate_nac(g, non_conjugated=True)
    reds = {frozenset(c.red) for c in reps}
    assert reds == {
        frozenset({(0, 5), (3, 5), (5, 6)}),
        frozenset({(1, 6), (4, 6), (5, 6)}),
        frozenset({(0, 5), (3, 5), (1, 6), (4, 6)}),
    }


def test_enumeration_matches_exhaustive_filter(rng):
    for _ in range(25):
        g = random_connected_graph(rng, rng.randint(3, 6), extra_edges=rng.randint(0, 4))
        if len(g.edges) > 14:
            continue
        assert len(enumerate_nac(g)) == exhaustive_nac_count(g)


def test_enumeration_closed_under_conjugation(rng):
    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(3, 6), extra_edges=2)
        full = set(enumerate_nac(g))
        assert {c.conjugate() for c in full} == full
        reps = enumerate_nac(g, non_conjugated=True)
        if full:
            assert len(reps) * 2 == len(full)


def test_conjugate_involution():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    for c in enumerate_nac(c4):
        assert conjugate(conjugate(c)) == c
        assert is_nac(c4, conjugate(c))


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_nac(ring_of_complete_bipartite())


def test_coloring_json_round_trip():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    for c in enumerate_nac(c4):
        assert NacColoring.from_json(c4, c.to_json()) == c


# -- unicolor pairs and closure ---------------------------------------------


def test_unicolor_pairs_of_the_example_graph():
    g = graph_with_unicolor_path()
    pairs = unicolor_pairs(g)
    assert {(0, 3), (1, 4)} <= pairs
    assert pairs == {(0, 3), (0, 4), (1, 3), (1, 4)}


def test_unicolor_pairs_empty_for_deltoid_cycle():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert unicolor_pairs(c4) == set()


def test_unicolor_pairs_vacuous_when_no_nac():
    g = graph_without_nac()
    assert unicolor_pairs(g) == set(g.non_edges())


def test_unicolor_pairs_against_path_search(rng):
    # direct oracle: a pair qualifies iff some path between them is unicolor
    # under every representative coloring
    import itertools

    def oracle(g):
        reps = enumerate_nac(g, non_conjugated=True)
        adj = g.adjacency()
        found = set()

        def paths(u, v):
            stack = [(u, [u])]
            while stack:
                x, path = stack.pop()
                if x == v:
                    yield path
                    continue
                for w in adj[x]:
                    if w not in path:
                        stack.append((w, path + [w]))

        for u, v in g.non_edges():
            for path in paths(u, v):
                path_edges = [edge(a, b) for a, b in zip(path, path[1:])]
                if all(
                    len({e in rep.red for e in path_edges}) == 1 for rep in reps
                ):
                    found.add((u, v))
                    break
        return found

    for _ in range(15):
        g = random_connected_graph(rng, rng.randint(3, 6), extra_edges=rng.randint(0, 3))
        assert unicolor_pairs(g) == oracle(g)


def test_closure_of_unicolor_path_graph_is_complete():
    report = constant_distance_closure(graph_with_unicolor_path())
    assert report.is_complete()
    assert report.closure.n == 7
    assert {(0, 3), (1, 4)} <= set(report.added[0])
    assert report.iterations == 2


def test_closure_fixpoints():
    q1 = catalog_graph("Q1")
    report = constant_distance_closure(q1)
    assert report.closure == q1 and report.iterations == 0
    k2 = Graph.of(2, [(0, 1)])
    assert constant_distance_closure(k2).closure == k2


def test_closure_monotone_and_idempotent(rng):
    for _ in range(60):
        g = random_connected_graph(rng, rng.randint(3, 6), extra_edges=rng.randint(1, 4))
        closure = constant_distance_closure(g).closure
        # idempotent
        assert constant_distance_closure(closure).closure == closure
        # monotone under spanning subgraphs (keep it connected)
        edges = g.sorted_edges()
        rng.shuffle(edges)
        for e in edges:
            h = Graph(g.n, g.edges - {e})
            if h.is_connected() and h.edges:
                assert constant_distance_closure(h).closure.edges <= closure.edges
                break


def test_edge_signatures_separate_colors():
    g = graph_with_unicolor_path()
    sig = edge_signatures(g)
    # the edges of the forced-unicolor paths share their signatures
    assert sig[(0, 2)] == sig[(2, 3)] == sig[(0, 1)]
    assert sig[(0, 5)] != sig[(5, 6)]


def test_closure_complete_iff_spanning_subgraph_without_nac():
    """Direct search on the small census slice: a non-complete closure has a
    NAC-coloring on every connected spanning subgraph, while complete
    closures trivially contain one without (the complete graph itself)."""
    from itertools import combinations

    from movability.catalog import catalog_graph
    from movability.pebble import spanning_laman_rank
    from movability.smallgraphs import connected_graphs_up_to

    checked_noncomplete = 0
    for g in connected_graphs_up_to(6):
        if spanning_laman_rank(g) != 2 * g.n - 3:
            continue
        closure = constant_distance_closure(g).closure
        if closure.is_complete():
            # the complete graph is a spanning subgraph of itself with no
            # NAC-coloring (n >= 3 forces a unicolor triangle)
            if closure.n >= 3:
                assert enumerate_nac(closure) == []
            continue
        checked_noncomplete += 1
        edges = closure.sorted_edges()
        for mask in range(1 << len(edges)):
            kept = [e for k, e in enumerate(edges) if mask >> k & 1]
            h = Graph(closure.n, frozenset(kept))
            if not h.edges or not h.is_connected():
                continue
            assert enumerate_nac(h), (closure, kept)
    assert checked_noncomplete >= 2


def test_cap_propagates_through_pairs_and_closure():
    g25 = ring_of_complete_bipartite()
    with pytest.raises(EnumerationCapExceeded):
        unicolor_pairs(g25)
    with pytest.raises(EnumerationCapExceeded):
        constant_distance_closure(g25)
