import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from movability.graphs import (
    Graph,
    Graph6Error,
    ReductionCollapse,
    encode_graph6,
    graph_from_json,
    graph_to_json,
    parse_graph6,
    reduce_degree_two,
)

from conftest import random_connected_graph


def reference_graph6(g: Graph) -> str:
    """Independent encoder used as the oracle: builds the bit string by hand."""
    assert g.n <= 62
    bits = ""
    for v in range(1, g.n):
        for u in range(v):
            bits += "1" if (u, v) in g.edges else "0"
    bits += "0" * (-len(bits) % 6)
    out = chr(63 + g.n)
    for k in range(0, len(bits), 6):
        out += chr(63 + int(bits[k : k + 6] or "0", 2))
    return out


def test_k2_encodes_as_A_underscore():
    assert reference_graph6(Graph.of(2, [(0, 1)])) == "A_"
    assert encode_graph6(Graph.of(2, [(0, 1)])) == "A_"
    assert parse_graph6("A_") == Graph.of(2, [(0, 1)])


def test_empty_three_vertex_graph():
    assert reference_graph6(Graph.of(3, [])) == "B?"
    assert encode_graph6(Graph.of(3, [])) == "B?"
    assert parse_graph6("B?") == Graph.of(3, [])


def test_single_vertex():
    assert parse_graph6("@") == Graph.of(1, [])
    assert encode_graph6(Graph.of(1, [])) == "@"


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.of(n, [e for e, keep in zip(pairs, mask) if keep])


@given(graphs())
@settings(max_examples=200)
def test_graph6_round_trip(g):
    assert parse_graph6(encode_graph6(g)) == g
    assert encode_graph6(g) == reference_graph6(g)


def test_parse_errors():
    with pytest.raises(Graph6Error):
        parse_graph6("")
    with pytest.raises(Graph6Error):
        parse_graph6("~??")  # long form unsupported
    with pytest.raises(Graph6Error):
        parse_graph6("D")  # truncated bit stream
    with pytest.raises(Graph6Error):
        parse_graph6("Cl?")  # trailing bytes
    with pytest.raises(Graph6Error):
        parse_graph6("A" + chr(64))  # dirty padding for n=2
    with pytest.raises(Graph6Error):
        parse_graph6("\x1f??")  # header below the alphabet


def test_encode_rejects_large_graphs():
    with pytest.raises(Graph6Error):
        encode_graph6(Graph.of(63, []))


def test_json_round_trip(rng):
    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(2, 9))
        assert graph_from_json(graph_to_json(g)) == g


def test_predicates():
    k4 = Graph.of(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert k4.is_complete()
    assert not Graph.of(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).is_complete()
    assert Graph.of(3, [(0, 1), (1, 2)]).is_connected()
    assert not Graph.of(3, [(0, 1)]).is_connected()
    ok, parts = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).is_bipartite()
    assert ok and {frozenset(p) for p in parts} == {frozenset({0, 2}), frozenset({1, 3})}
    ok, _ = Graph.of(3, [(0, 1), (1, 2), (0, 2)]).is_bipartite()
    assert not ok


def test_induced_subgraph_relabels_in_order():
    g = Graph.of(5, [(0, 2), (2, 4), (1, 3), (0, 4)])
    sub = g.induced_subgraph([0, 2, 4])
    assert sub == Graph.of(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError):
        g.induced_subgraph([3, 7])


def test_reduce_degree_two_triangle():
    tri = Graph.of(3, [(0, 1), (1, 2), (0, 2)])
    reduced, kept = reduce_degree_two(tri)
    assert reduced == Graph.of(2, [(0, 1)])
    assert kept == [1, 2]  # vertex 0 (lowest label) removed first


def test_reduce_degree_two_fixpoint():
    g = Graph.of(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    reduced, kept = reduce_degree_two(g)
    assert reduced == g and kept == [0, 1, 2, 3]


def test_reduce_four_cycle_collapses():
    c4 = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(ReductionCollapse):
        reduce_degree_two(c4)


def test_reduce_cascades():
    # K4 with two stacked degree-two vertices: removing 5 drops 4 to degree
    # two, so the reduction cascades down to the K4 core
    k4 = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    g = Graph.of(6, k4 + [(2, 4), (3, 4), (4, 5), (1, 5)])
    reduced, kept = reduce_degree_two(g)
    assert kept == [0, 1, 2, 3]
    assert reduced == Graph.of(4, k4)


def test_reduce_idempotent(rng):
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(4, 9), extra_edges=4)
        try:
            reduced, _ = reduce_degree_two(g)
        except ReductionCollapse:
            continue
        again, kept = reduce_degree_two(reduced)
        assert again == reduced and kept == list(range(reduced.n))
        assert 2 not in reduced.degrees()


def test_round_trip_on_a_large_graph(rng):
    g = random_connected_graph(rng, 40, extra_edges=60)
    assert parse_graph6(encode_graph6(g)) == g


def test_reduction_stops_at_degree_two_cut_vertex():
    # two triangles joined through a degree-two vertex: deleting it
    # disconnects, which the reduction refuses to silently accept
    g = Graph.of(
        7,
        [(0, 1), (1, 2), (0, 2), (4, 5), (5, 6), (4, 6), (2, 3), (3, 4)],
    )
    with pytest.raises(ReductionCollapse):
        reduce_degree_two(g)
