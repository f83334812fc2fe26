"""Rank of the (2,3)-sparsity count matroid via the pebble game.

A graph has a spanning Laman subgraph exactly when the rank equals 2n-3;
generic realizations of such graphs are rigid, so everything interesting for
movability happens on them.
"""

from __future__ import annotations

from .graphs import Graph


def spanning_laman_rank(g: Graph) -> int:
    """Accumulated number of independent edges in the (2,3)-pebble game.

    Each vertex starts with two pebbles; an edge is accepted when four
    pebbles can be gathered on its endpoints, and acceptance pins one pebble
    down.  Pebbles are recovered by reversing directed paths.  The result is
    the rank of the generic rigidity matroid (order of edges is irrelevant).
    """
    if g.n < 2:
        raise ValueError("pebble game needs at least two vertices")
    pebbles = [2] * g.n
    out: list[set[int]] = [set() for _ in range(g.n)]

    def pull_pebble(root: int, blocked: set[int]) -> bool:
        # DFS along directed edges for a vertex with a spare pebble, then
        # reverse the path to carry the pebble back to root.
        prev = {root: -1}
        stack = [root]
        found = -1
        while stack:
            u = stack.pop()
            if pebbles[u] > 0 and u not in blocked:
                found = u
                break
            for w in out[u]:
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        if found < 0:
            return False
        pebbles[found] -= 1
        v = found
        while prev[v] != -1:
            u = prev[v]
            out[u].remove(v)
            out[v].add(u)
            v = u
        pebbles[root] += 1
        return True

    rank = 0
    for u, v in g.sorted_edges():
        while pebbles[u] + pebbles[v] < 4:
            if pebbles[u] < 2 and pull_pebble(u, {u, v}):
                continue
            if pebbles[v] < 2 and pull_pebble(v, {u, v}):
                continue
            break
        if pebbles[u] + pebbles[v] >= 4:
            pebbles[u] -= 1
            out[u].add(v)
            rank += 1
    return rank


def has_spanning_laman(g: Graph) -> bool:
    return g.n >= 2 and spanning_laman_rank(g) == 2 * g.n - 3


def is_laman(g: Graph) -> bool:
    """Minimally generically rigid: 2n-3 edges, all of them independent."""
    return (
        g.n >= 2
        and len(g.edges) == 2 * g.n - 3
        and spanning_laman_rank(g) == 2 * g.n - 3
    )
