import random

import pytest

from movability.graphs import Graph


@pytest.fixture
def rng():
    return random.Random(20250808)


def random_connected_graph(rng, n, extra_edges=2):
    """Random tree plus a few extra edges; always connected and simple."""
    edges = set()
    for v in range(1, n):
        edges.add(tuple(sorted((v, rng.randrange(v)))))
    candidates = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    for e in candidates[:extra_edges]:
        edges.add(e)
    return Graph.of(n, edges)
