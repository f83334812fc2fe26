"""Constructions of proper flexible labelings, each with a checkable witness.

Four routes: the axes construction for bipartite graphs, the grid realization
from a single NAC-coloring, the R^3-embedding construction from a pair of
NAC-colorings (driven by a moving quadrilateral frame), and the closed-form
motion of the 13-edge graph S5 that none of the general routes covers.
Subgraph gluing lives in the gluing module.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import GaussianRational, Poly
from .graphs import Edge, Graph, edge
from .nac import BLUE, RED, NacColoring, is_nac
from .motion import Labeling, MotionError, ParametrizedMotion, verify_injectivity
from .ratfunc import RationalFunction

Triple = tuple[Fraction, Fraction, Fraction]

# direction assigned to the color pair (first coloring, second coloring)
DIRECTIONS: tuple[Triple, ...] = (
    (Fraction(1), Fraction(0), Fraction(0)),  # blue, blue
    (Fraction(0), Fraction(1), Fraction(0)),  # blue, red
    (Fraction(0), Fraction(0), Fraction(1)),  # red, blue
    (Fraction(-1), Fraction(-1), Fraction(-1)),  # red, red
)

_PAIR_INDEX = {(BLUE, BLUE): 0, (BLUE, RED): 1, (RED, BLUE): 2, (RED, RED): 3}


class ConstructionInapplicable(ValueError):
    """The construction's precondition failed; says nothing about movability."""


# -- rational circle ---------------------------------------------------------


def circle_functions() -> tuple[RationalFunction, RationalFunction]:
    """(cos, sin) as rational functions of the half-angle parameter."""
    c = RationalFunction.of(Poly.of([1, 0, -1]), Poly.of([1, 0, 1]))
    s = RationalFunction.of(Poly.of([0, 2]), Poly.of([1, 0, 1]))
    return c, s


def _const(x) -> RationalFunction:
    return RationalFunction.const(GaussianRational.of(x))


# -- Dixon's axes construction ----------------------------------------------


@dataclass(frozen=True)
class DixonSampler:
    """Realizations of the axes motion: X-part on the x-axis, Y-part on y.

    Positions are (sign*sqrt(x_u^2 - t^2), 0) and (0, sign*sqrt(y_v^2 + t^2));
    squared coordinates stay rational, so compatibility and injectivity of a
    sample are exact checks.
    """

    graph: Graph
    x_part: tuple[int, ...]
    y_part: tuple[int, ...]
    x_params: Mapping[int, Fraction]
    y_params: Mapping[int, Fraction]
    x_signs: Mapping[int, int]
    y_signs: Mapping[int, int]

    def parameter_bound(self) -> Fraction:
        return min(abs(self.x_params[u]) for u in self.x_part)

    def squared_coords(self, t: Fraction) -> dict[int, tuple[str, Fraction, int]]:
        """Per vertex: axis ('x' or 'y'), squared axis coordinate, sign."""
        if abs(t) >= self.parameter_bound():
            raise ValueError(f"|t| must stay below {self.parameter_bound()}")
        out: dict[int, tuple[str, Fraction, int]] = {}
        for u in self.x_part:
            out[u] = ("x", self.x_params[u] ** 2 - t * t, self.x_signs[u])
        for v in self.y_part:
            out[v] = ("y", self.y_params[v] ** 2 + t * t, self.y_signs[v])
        return out

    def realize_float(self, t: float) -> list[tuple[float, float]]:
        pos = [(0.0, 0.0)] * self.graph.n
        for u in self.x_part:
            pos[u] = (self.x_signs[u] * math.sqrt(float(self.x_params[u]) ** 2 - t * t), 0.0)
        for v in self.y_part:
            pos[v] = (0.0, self.y_signs[v] * math.sqrt(float(self.y_params[v]) ** 2 + t * t))
        return pos


def dixon_one(
    g: Graph,
    x_params: Mapping[int, Fraction],
    y_params: Mapping[int, Fraction],
    *,
    x_signs: Mapping[int, int] | None = None,
    y_signs: Mapping[int, int] | None = None,
) -> tuple[Labeling, DixonSampler]:
    """Labeling lambda^2(uv) = x_u^2 + y_v^2 for a bipartite graph.

    Compatibility is the Pythagorean identity
    (x_u^2 - t^2) + (y_v^2 + t^2) = x_u^2 + y_v^2, an exact statement about
    the sampler's squared coordinates.
    """
    ok, parts = g.is_bipartite()
    if not ok:
        raise ConstructionInapplicable("graph is not bipartite (odd cycle found)")
    if g.n < 3:
        raise ConstructionInapplicable("axes construction needs at least three vertices")
    a, b = parts
    if set(x_params) == a and set(y_params) == b:
        pass
    elif set(x_params) == b and set(y_params) == a:
        a, b = b, a
    else:
        raise ConstructionInapplicable(
            "parameter keys must cover the two bipartition classes exactly"
        )
    for coll, name in ((x_params, "x"), (y_params, "y")):
        for v, val in coll.items():
            if val == 0:
                raise ConstructionInapplicable(f"{name} parameter of vertex {v} is zero")
    x_signs = {u: 1 for u in a} if x_signs is None else dict(x_signs)
    y_signs = {v: 1 for v in b} if y_signs is None else dict(y_signs)
    labeling: Labeling = {}
    for u, v in g.sorted_edges():
        xu = u if u in a else v
        yv = v if u in a else u
        labeling[(u, v)] = Fraction(x_params[xu]) ** 2 + Fraction(y_params[yv]) ** 2
    sampler = DixonSampler(
        graph=g,
        x_part=tuple(sorted(a)),
        y_part=tuple(sorted(b)),
        x_params={k: Fraction(v) for k, v in x_params.items()},
        y_params={k: Fraction(v) for k, v in y_params.items()},
        x_signs=x_signs,
        y_signs=y_signs,
    )
    return labeling, sampler


# -- grid construction from one NAC-coloring ---------------------------------


@dataclass(frozen=True)
class GridEmbedding:
    """Vertex -> (red component index, blue component index)."""

    graph: Graph
    coords: tuple[tuple[int, int], ...]
    red_components: tuple[tuple[int, ...], ...]
    blue_components: tuple[tuple[int, ...], ...]

    def point(self, v: int) -> tuple[int, int]:
        return self.coords[v]


def _color_components(g: Graph, keep: frozenset[Edge]) -> list[list[int]]:
    # discovery order from the lowest vertex; isolated vertices are
    # singleton components and do get indices
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in keep:
        adj[u].add(v)
        adj[v].add(u)
    comp_of = [-1] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if comp_of[s] != -1:
            continue
        idx = len(comps)
        stack = [s]
        comp_of[s] = idx
        members = [s]
        while stack:
            u = stack.pop()
            for w in sorted(adj[u]):
                if comp_of[w] == -1:
                    comp_of[w] = idx
                    members.append(w)
                    stack.append(w)
        comps.append(sorted(members))
    return comps


def grid_construction(
    g: Graph, coloring: NacColoring
) -> tuple[GridEmbedding, Labeling, ParametrizedMotion]:
    """Grid realization induced by one NAC-coloring.

    Vertex v goes to i*(1,0) + j*(cos, sin) where i indexes its red component
    and j its blue component; red edges keep i, blue edges keep j, so all edge
    lengths are angle-independent.  Applicable iff no two vertices share the
    same (i, j) cell.
    """
    if coloring.graph != g:
        raise ValueError("coloring belongs to a different graph")
    if not is_nac(g, coloring):
        raise ConstructionInapplicable("the supplied coloring is not a NAC-coloring")
    red_comps = _color_components(g, coloring.red)
    blue_comps = _color_components(g, coloring.blue)
    red_index = {v: i for i, comp in enumerate(red_comps) for v in comp}
    blue_index = {v: j for j, comp in enumerate(blue_comps) for v in comp}
    coords = [(red_index[v], blue_index[v]) for v in range(g.n)]
    seen: dict[tuple[int, int], int] = {}
    for v, cell in enumerate(coords):
        if cell in seen:
            raise ConstructionInapplicable(
                f"vertices {seen[cell]} and {v} share grid cell {cell}: "
                f"|R_{cell[0]} ∩ B_{cell[1]}| >= 2"
            )
        seen[cell] = v
    embedding = GridEmbedding(
        graph=g,
        coords=tuple(coords),
        red_components=tuple(tuple(c) for c in red_comps),
        blue_components=tuple(tuple(c) for c in blue_comps),
    )
    labeling: Labeling = {}
    for u, v in g.sorted_edges():
        di = coords[u][0] - coords[v][0]
        dj = coords[u][1] - coords[v][1]
        if (u, v) in coloring.red:
            assert di == 0 and dj != 0
        else:
            assert dj == 0 and di != 0
        labeling[(u, v)] = Fraction(di * di + dj * dj)

    c, s = circle_functions()
    raw = [(_const(i) + _const(j) * c, _const(j) * s) for i, j in coords]
    base, tip = _horizontal_pin(coloring, coords)
    bx, by = raw[base]
    shifted = tuple((x - bx, y - by) for x, y in raw)
    motion = ParametrizedMotion(g, (base, tip), shifted)
    return embedding, labeling, motion


def _horizontal_pin(coloring: NacColoring, coords) -> tuple[int, int]:
    # blue edges are horizontal segments of the grid motion; pin the first,
    # oriented so the free endpoint sits on the positive x-axis
    if not coloring.blue:
        raise ConstructionInapplicable("coloring has no blue edge")
    u, v = min(coloring.blue)
    return (u, v) if coords[u][0] < coords[v][0] else (v, u)


# -- R^3 embedding from two NAC-colorings ------------------------------------


@dataclass(frozen=True)
class EmbeddingR3:
    """Injective vertex embedding whose edge directions lie in four classes."""

    graph: Graph
    points: tuple[Triple, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("embedding is not injective")
        present = set()
        for u, v in self.graph.edges:
            present.add(self.direction_class(u, v))
        if present != {0, 1, 2, 3}:
            missing = sorted(set(range(4)) - present)
            raise ValueError(f"direction classes {missing} are empty")

    def direction_class(self, u: int, v: int) -> int:
        d = tuple(a - b for a, b in zip(self.points[u], self.points[v]))
        for k, ref in enumerate(DIRECTIONS):
            cross_ok = _parallel(d, ref)
            if cross_ok:
                return k
        raise ValueError(f"edge ({u},{v}) direction {d} matches no class")

    def to_json(self) -> str:
        return json.dumps(
            {
                str(v): [f"{c.numerator}/{c.denominator}" for c in p]
                for v, p in enumerate(self.points)
            }
        )


def _parallel(d: Sequence[Fraction], ref: Sequence[Fraction]) -> bool:
    if all(x == 0 for x in d):
        return False
    return (
        d[0] * ref[1] == d[1] * ref[0]
        and d[0] * ref[2] == d[2] * ref[0]
        and d[1] * ref[2] == d[2] * ref[1]
    )


def two_nac_solution_space(
    g: Graph, first: NacColoring, second: NacColoring
) -> list[tuple[Triple, ...]]:
    """Basis of the solution space of the edge-direction linear system.

    Vertex 0 is pinned to the origin; every edge contributes two equations
    forcing its endpoint difference parallel to the direction its color pair
    selects.  Solved exactly over Q; each basis vector is returned as a full
    tuple of vertex triples (vertex 0 = origin included).
    """
    for coloring in (first, second):
        if coloring.graph != g:
            raise ValueError("coloring belongs to a different graph")
        if not is_nac(g, coloring):
            raise ConstructionInapplicable("a supplied coloring is not a NAC-coloring")
    nvar = 3 * (g.n - 1)

    def var(v: int, k: int) -> int:
        return 3 * (v - 1) + k

    rows: list[list[Fraction]] = []

    def add_row(entries: Iterable[tuple[int, int]]):
        row = [Fraction(0)] * nvar
        for idx, coeff in entries:
            if idx >= 0:
                row[idx] += coeff
        rows.append(row)

    for u, v in g.sorted_edges():
        pair = (first.color(u, v), second.color(u, v))
        klass = _PAIR_INDEX[pair]
        iu = [var(u, k) if u else -1 for k in range(3)]
        iv = [var(v, k) if v else -1 for k in range(3)]
        if klass == 0:  # parallel (1,0,0): y and z differences vanish
            add_row([(iu[1], 1), (iv[1], -1)])
            add_row([(iu[2], 1), (iv[2], -1)])
        elif klass == 1:
            add_row([(iu[0], 1), (iv[0], -1)])
            add_row([(iu[2], 1), (iv[2], -1)])
        elif klass == 2:
            add_row([(iu[0], 1), (iv[0], -1)])
            add_row([(iu[1], 1), (iv[1], -1)])
        else:  # parallel (-1,-1,-1): x-y and x-z differences vanish
            add_row([(iu[0], 1), (iv[0], -1), (iu[1], -1), (iv[1], 1)])
            add_row([(iu[0], 1), (iv[0], -1), (iu[2], -1), (iv[2], 1)])
    basis = _nullspace(rows, nvar)
    out = []
    for vec in basis:
        points: list[Triple] = [(Fraction(0), Fraction(0), Fraction(0))]
        for v in range(1, g.n):
            points.append((vec[var(v, 0)], vec[var(v, 1)], vec[var(v, 2)]))
        out.append(tuple(points))
    return out


def _nullspace(rows: list[list[Fraction]], nvar: int) -> list[list[Fraction]]:
    """Exact nullspace basis by fraction-based Gaussian elimination."""
    m = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(nvar):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(nvar) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * nvar
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def two_nac_embedding(
    g: Graph,
    first: NacColoring,
    second: NacColoring,
    *,
    seed: int = 0,
    max_tries: int = 64,
) -> EmbeddingR3:
    """Injective embedding from a pair of NAC-colorings, or a precise failure.

    A generic point of the solution space is sampled with small random
    integer coefficients (seeded); sampling only fails persistently when two
    vertices coincide on the whole space, which is reported as the
    obstruction.
    """
    pairs_seen = {(first.color(u, v), second.color(u, v)) for u, v in g.edges}
    missing = [p for p in _PAIR_INDEX if p not in pairs_seen]
    if missing:
        raise ConstructionInapplicable(
            f"direction classes for color pairs {missing} are empty"
        )
    basis = two_nac_solution_space(g, first, second)
    if not basis:
        raise ConstructionInapplicable("the linear system has only the zero solution")
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if all(vec[u] == vec[v] for vec in basis):
                raise ConstructionInapplicable(
                    f"vertices {u} and {v} coincide on the whole solution space"
                )
    rng = random.Random(seed)
    for _ in range(max_tries):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in basis]
        if all(c == 0 for c in coeffs):
            continue
        points = []
        for v in range(g.n):
            acc = [Fraction(0)] * 3
            for coeff, vec in zip(coeffs, basis):
                for k in range(3):
                    acc[k] += coeff * vec[v][k]
            points.append(tuple(acc))
        if len(set(points)) == g.n:
            try:
                return EmbeddingR3(g, tuple(points))
            except ValueError:
                continue
    raise ConstructionInapplicable(
        "no injective generic point found (solution space too degenerate)"
    )


# -- quadrilateral frames and the induced motion ------------------------------


@dataclass(frozen=True)
class QuadMotion:
    """Motion of a 4-cycle together with its frame functions.

    The frame is f1 = p(c1)-p(c0), f2 = p(c2)-p(c1), f3 = p(c3)-p(c2) for the
    cycle (c0, c1, c2, c3); all three norms and |f1+f2+f3| are edge lengths,
    hence constant.  The motion must be pinned at (c0, c1) so that f1 lies on
    the x-axis, which is what lets the embedding construction pin its result.
    """

    motion: ParametrizedMotion
    cycle: tuple[int, int, int, int]

    def __post_init__(self):
        c0, c1, c2, c3 = self.cycle
        g = self.motion.graph
        for a, b in ((c0, c1), (c1, c2), (c2, c3), (c3, c0)):
            if edge(a, b) not in g.edges:
                raise ValueError(f"({a},{b}) is not an edge of the quadrilateral")
        if self.motion.fixed_edge != (c0, c1):
            raise ValueError("quad motion must be pinned at the first cycle edge")

    def frames(self) -> tuple:
        m, (c0, c1, c2, c3) = self.motion, self.cycle
        f1 = (m.x(c1) - m.x(c0), m.y(c1) - m.y(c0))
        f2 = (m.x(c2) - m.x(c1), m.y(c2) - m.y(c1))
        f3 = (m.x(c3) - m.x(c2), m.y(c3) - m.y(c2))
        return f1, f2, f3

    def frame_norms_squared(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        lab = self.motion.induced_labeling()
        c0, c1, c2, c3 = self.cycle
        return (
            lab[edge(c0, c1)],
            lab[edge(c1, c2)],
            lab[edge(c2, c3)],
            lab[edge(c3, c0)],
        )


def deltoid_motion(scale: Fraction = Fraction(1)) -> QuadMotion:
    """The rational deltoid motion of the 4-cycle, edge lengths (a, 3a, 3a, a).

    Vertices 0 and 1 are pinned; vertex 2 runs on a circle of radius 3a and
    vertex 3 follows on the coupler.  Frame norms squared are
    (a^2, 9a^2, 9a^2) with |f1+f2+f3|^2 = a^2.
    """
    a = Fraction(scale)
    if a <= 0:
        raise ConstructionInapplicable("scale must be positive")
    g = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    zero = RationalFunction.of(Poly.of([]))
    x2 = RationalFunction.of(Poly.of([-8 * a, 0, 4 * a]), Poly.of([4, 0, 1]))
    y2 = RationalFunction.of(Poly.of([0, 12 * a]), Poly.of([4, 0, 1]))
    x3 = RationalFunction.of(Poly.of([4 * a, 0, -13 * a, 0, a]), Poly.of([4, 0, 5, 0, 1]))
    y3 = RationalFunction.of(Poly.of([0, -12 * a, 0, 6 * a]), Poly.of([4, 0, 5, 0, 1]))
    coords = ((zero, zero), (_const(a), zero), (x2, y2), (x3, y3))
    motion = ParametrizedMotion(g, (0, 1), coords)
    return QuadMotion(motion, (0, 1, 2, 3))


def motion_from_embedding(
    omega: EmbeddingR3, quad: QuadMotion, *, base_hint: int | None = None
) -> ParametrizedMotion:
    """Drive the embedded graph by the quadrilateral frame.

    Vertex u moves as w1(u) f1 + w2(u) f2 + w3(u) f3; an edge parallel to a
    coordinate direction moves as a multiple of one frame function (or of
    their sum for the (-1,-1,-1) class), so its length is constant.  The
    result is pinned at an edge of the (1,0,0) class, which is horizontal.
    """
    g = omega.graph
    n1, n2, n3, n_sum = quad.frame_norms_squared()
    f1, f2, f3 = quad.frames()
    coords = []
    for v in range(g.n):
        w1, w2, w3 = omega.points[v]
        x = _const(w1) * f1[0] + _const(w2) * f2[0] + _const(w3) * f3[0]
        y = _const(w1) * f1[1] + _const(w2) * f2[1] + _const(w3) * f3[1]
        coords.append((x, y))
    pin = None
    candidates = sorted(g.edges)
    if base_hint is not None:
        candidates.sort(key=lambda e: (base_hint not in e,) + e)
    for u, v in candidates:
        if omega.direction_class(u, v) == 0:
            du = omega.points[v][0] - omega.points[u][0]
            pin = (u, v) if du > 0 else (v, u)
            break
    if pin is None:
        raise ConstructionInapplicable("no edge in the (1,0,0) class to pin")
    bx, by = coords[pin[0]]
    shifted = tuple((x - bx, y - by) for x, y in coords)
    return ParametrizedMotion(g, pin, shifted)


def third_coloring(first: NacColoring, second: NacColoring) -> NacColoring:
    """blue exactly where the two colorings agree; always a NAC-coloring
    for pairs that admit the embedding construction."""
    g = first.graph
    red = frozenset(
        e for e in g.edges if (e in first.red) != (e in second.red)
    )
    return NacColoring(g, red)


# -- the ad-hoc motion of S5 --------------------------------------------------


S5_EDGES_MOTION_LABELS: tuple[Edge, ...] = (
    (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (2, 6),
    (3, 4), (3, 5), (3, 6), (4, 7), (5, 7), (6, 7),
)


def s5_graph_motion_labels() -> Graph:
    """S5 in the labeling its closed-form motion uses.

    Vertex roles: 0 the center, 1/2 the far collinear pair, 3 the circling
    vertex, 4 on the ray through 0 and 3, 5/6 the antiparallelogram tips,
    7 the rhombus apex.
    """
    return Graph.of(8, S5_EDGES_MOTION_LABELS)


def s5_motion(
    a: Fraction, *, denylist: Iterable[Fraction] = ()
) -> tuple[Labeling, ParametrizedMotion]:
    """Closed-form proper flexible labeling of S5 with shape parameter a > 1.

    Triangles (0,1,2) and (0,3,4) stay collinear, quadrilaterals (0,3,5,1)
    and (0,3,6,2) move as antiparallelograms, (3,6,7,5) as a rhombus.  The
    circle parameter is rationalized, so every coordinate is an exact
    rational function and every edge length is checked constant.
    """
    a = Fraction(a)
    if a <= 1:
        raise ConstructionInapplicable("the shape parameter must exceed 1")
    if a in {Fraction(x) for x in denylist}:
        raise ConstructionInapplicable(f"parameter {a} is denylisted as degenerate")
    g = s5_graph_motion_labels()
    c, s = circle_functions()
    zero = RationalFunction.of(Poly.of([]))
    one = _const(1)

    a2 = a * a
    rho0 = (zero, zero)
    rho1 = (_const(-a), zero)
    rho2 = (_const(a), zero)
    rho3 = (c, s)
    k5 = _const((1 - a2) / (a2 + 1))
    rho4 = (k5 * c, k5 * s)
    den6 = _const(a2 + 1) + _const(2 * a) * c
    rho5 = (
        -(_const(a2 * a - a) + _const(a2 - 1) * c) / den6,
        _const(1 - a2) * s / den6,
    )
    den7 = _const(a2 + 1) - _const(2 * a) * c
    rho6 = (
        (_const(a2 * a - a) - _const(a2 - 1) * c) / den7,
        _const(1 - a2) * s / den7,
    )
    den8 = _const((a2 - 1) ** 2) + _const(4 * a2) * s * s
    rho7 = (
        (_const((a2 - 1) ** 2) - _const(4 * a2) * s * s) * c / den8,
        -(_const(3 * a2 * a2 + 2 * a2 - 1) - _const(4 * a2) * c * c) * s / den8,
    )
    coords = (rho0, rho1, rho2, rho3, rho4, rho5, rho6, rho7)
    try:
        motion = ParametrizedMotion(g, (0, 2), coords)
    except MotionError as exc:  # pragma: no cover - guards transcription bugs
        raise ConstructionInapplicable(f"motion incompatible at a={a}: {exc}") from exc
    report = verify_injectivity(motion)
    if not report.proper:
        raise ConstructionInapplicable(
            f"parameter a={a} collapses vertex pairs {report.coinciding_pairs}"
        )
    return motion.induced_labeling(), motion
