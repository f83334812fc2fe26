"""Undirected simple graphs on vertices 0..n-1, with graph6 and JSON I/O.

Everything downstream (coloring enumeration, closures, motions) consumes the
immutable :class:`Graph` defined here.  Connectivity is deliberately not an
invariant of the type; operations that need it check it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

Edge = tuple[int, int]


class Graph6Error(ValueError):
    """Malformed graph6 input (bad header, truncated bits, dirty padding)."""


class ReductionCollapse(ValueError):
    """Degree-two reduction emptied the graph below a single edge.

    Raised only for graphs whose flexing is trivial (paths, cycles, ...);
    anything with a spanning Laman subgraph keeps at least one edge.
    """


def edge(u: int, v: int) -> Edge:
    """Normalized (u < v) edge tuple."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with vertex set {0, ..., n-1}."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")

    @staticmethod
    def of(n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        return Graph(n, frozenset(edge(u, v) for u, v in edges))

    # -- basic accessors -------------------------------------------------

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def neighbors(self, u: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == u:
                out.add(b)
            elif b == u:
                out.add(a)
        return out

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def non_edges(self) -> list[Edge]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        ]

    # -- predicates ------------------------------------------------------

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def is_bipartite(self) -> tuple[bool, tuple[set[int], set[int]] | None]:
        """2-colorability check; returns the parts on success."""
        adj = self.adjacency()
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = [s]
            while queue:
                u = queue.pop()
                for w in adj[u]:
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return False, None
        parts = ({v for v in range(self.n) if color[v] == 0},
                 {v for v in range(self.n) if color[v] == 1})
        return True, parts

    # -- derived graphs ---------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph relabeled to 0..k-1, order preserving."""
        keep = sorted(set(vertices))
        if keep and not (0 <= keep[0] and keep[-1] < self.n):
            raise ValueError("vertex set not contained in the graph")
        index = {v: i for i, v in enumerate(keep)}
        kept = frozenset(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return Graph(len(keep), kept)

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges | {edge(u, v) for u, v in extra})

    def relabel(self, perm: list[int]) -> "Graph":
        """Apply vertex permutation: vertex v goes to position perm[v]."""
        return Graph(self.n, frozenset(edge(perm[u], perm[v]) for u, v in self.edges))

    def complement_pairs(self) -> Iterator[Edge]:
        yield from self.non_edges()


def _connected_on(vertices: list[int], edges: set[Edge]) -> bool:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def reduce_degree_two(g: Graph) -> tuple[Graph, list[int]]:
    """Strip degree-two vertices one at a time until none remain.

    Removal cascades (a removal may create new degree-two vertices) and the
    lowest-labeled candidate goes first, so the result is deterministic.
    Returns the reduced graph plus the list of surviving original labels in
    order (position i of the result was vertex kept[i] of the input).
    Movability is invariant under this reduction.
    """
    vertices = list(range(g.n))
    edges = set(g.edges)
    while True:
        deg: dict[int, int] = {v: 0 for v in vertices}
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        victim = next((v for v in vertices if deg[v] == 2), None)
        if victim is None:
            break
        edges = {e for e in edges if victim not in e}
        vertices.remove(victim)
        if not edges:
            raise ReductionCollapse(
                "degree-two reduction removed every edge; the graph flexes trivially"
            )
        if not _connected_on(vertices, edges):
            # a degree-two cut vertex: cannot happen for graphs with a
            # spanning Laman subgraph, and the movability equivalence needs
            # connected graphs, so stop rather than continue per component
            raise ReductionCollapse(
                "degree-two reduction disconnected the graph; the flex is trivial"
            )
    index = {v: i for i, v in enumerate(vertices)}
    reduced = Graph(len(vertices), frozenset(edge(index[u], index[v]) for u, v in edges))
    return reduced, vertices


# -- graph6 ----------------------------------------------------------------
#
# Short form only: header byte 63+n (n <= 62), then the upper triangle of the
# adjacency matrix read column by column -- pairs (0,1),(0,2),(1,2),(0,3),...
# -- packed big-endian into 6-bit groups, zero padded, each group offset by 63.


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise Graph6Error("short-form graph6 supports at most 62 vertices")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if (u, v) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        group = 0
        for b in bits[k : k + 6]:
            group = (group << 1) | b
        out.append(chr(63 + group))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise Graph6Error("empty graph6 string")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    head = ord(s[0])
    if head == 126:
        raise Graph6Error("long-form graph6 (n > 62) is not supported")
    if not (63 <= head <= 125):
        raise Graph6Error(f"bad header byte {head}")
    n = head - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) < nbytes:
        raise Graph6Error("truncated graph6 bit stream")
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after graph6 payload")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not (0 <= val < 64):
            raise Graph6Error(f"byte {ord(ch)} outside graph6 alphabet")
        for shift in range(5, -1, -1):
            bits.append((val >> shift) & 1)
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = set()
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.add((u, v))
            k += 1
    return Graph(n, frozenset(edges))


# -- adjacency-list JSON (secondary interchange format) --------------------


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.sorted_edges()]})


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.of(int(data["n"]), data["edges"])
