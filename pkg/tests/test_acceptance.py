"""Acceptance suite: one test per criterion, one PASS line per criterion.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they pass.
Exact criteria assert integer/rational equality with zero tolerance; numeric
criteria pin the stated thresholds.  The census criterion processes every
connected graph on up to eight vertices and is the slow one (a few minutes,
far under its stated budget).
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from movability.canon import canonical_form
from movability.catalog import (
    catalog_graph,
    graph_with_unicolor_path,
    graph_without_nac,
    load_catalog,
    movable_seven_vertex_graph,
    q1_embedding_example,
    ring_of_complete_bipartite,
)
from movability.constructions import (
    deltoid_motion,
    motion_from_embedding,
    s5_motion,
    two_nac_embedding,
    two_nac_solution_space,
)
from movability.decide import (
    MOVABLE,
    NOT_MOVABLE_CDC_COMPLETE,
    NOT_MOVABLE_NO_NAC,
    census,
    certify_no_unicolor_pairs,
    classify,
    nac_witnesses,
)
from movability.graphs import Graph, encode_graph6
from movability.motion import (
    active_nac_colorings,
    all_valuation_tables,
    refix_edge,
    valuation_table,
    verify_compatibility,
    verify_injectivity,
    w_function,
    z_function,
)
from movability.nac import NacColoring, constant_distance_closure, enumerate_nac, is_nac
from movability.ratfunc import RationalFunction, place_at
from movability.track import track_motion

from conftest import random_connected_graph
from test_nac import all_simple_cycles, oracle_is_nac


def _ok(name: str):
    print(f"\nACCEPTANCE {name}: PASS")


# -- criterion 1: deltoid valuation table -------------------------------------


def test_criterion_1_deltoid_table(tmp_path, capsys):
    import json

    from movability.cli import main
    from movability.motion import motion_to_json

    t0 = time.monotonic()
    quad = deltoid_motion()
    m = quad.motion
    expected = {
        # places keyed by (re, im); rows ordered (0,1), (1,2), (2,3), (0,3)
        (0, -1): {(0, 1): 0, (1, 2): 0, (2, 3): 1, (0, 3): 1},
        (0, 1): {(0, 1): 0, (1, 2): 0, (2, 3): -1, (0, 3): -1},
        (0, -2): {(0, 1): 0, (1, 2): 1, (2, 3): 0, (0, 3): 1},
        (0, 2): {(0, 1): 0, (1, 2): -1, (2, 3): 0, (0, 3): -1},
    }
    seen = 0
    for (re, im), rows in expected.items():
        table = valuation_table(m, place_at(re, im))
        assert table.as_dict() == rows
        seen += len(rows)
    assert seen == 16
    active = active_nac_colorings(m)
    assert active.complete and len(active.colorings) == 4
    assert {c.red for c in active.colorings} == {
        frozenset({(2, 3), (0, 3)}),  # delta_1
        frozenset({(0, 1), (1, 2)}),  # conj delta_1
        frozenset({(1, 2), (0, 3)}),  # delta_2
        frozenset({(0, 1), (2, 3)}),  # conj delta_2
    }
    assert len(enumerate_nac(m.graph)) == 6

    # the same facts through the command-line surface
    motion_file = tmp_path / "deltoid.json"
    motion_file.write_text(motion_to_json(m))
    assert main(["motion", "valuations", str(motion_file), "--format", "json"]) == 0
    tables = {
        entry["place"]: entry["valuations"]
        for entry in json.loads(capsys.readouterr().out)
    }
    place_names = {(0, -1): "-i", (0, 1): "i", (0, -2): "-2i", (0, 2): "2i"}
    for key, rows in expected.items():
        got = tables[place_names[key]]
        assert got == {f"{u},{v}": val for (u, v), val in rows.items()}
    assert main(["motion", "active-nac", str(motion_file), "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 4

    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    _ok(f"1 deltoid valuations/active set, module and CLI ({elapsed:.2f}s)")


# -- criterion 2: the seven-vertex triptych ------------------------------------


def test_criterion_2_seven_vertex_triptych():
    t0 = time.monotonic()
    left = graph_without_nac()
    assert enumerate_nac(left) == []
    t_left = time.monotonic() - t0

    t0 = time.monotonic()
    middle = graph_with_unicolor_path()
    reps = enumerate_nac(middle, non_conjugated=True)
    assert len(reps) == 3
    closure = constant_distance_closure(middle)
    assert closure.is_complete() and closure.closure.n == 7
    assert {(0, 3), (1, 4)} <= set(closure.added[0])
    t_mid = time.monotonic() - t0

    t0 = time.monotonic()
    right = movable_seven_vertex_graph()
    verdict = classify(right)
    assert verdict.kind == MOVABLE
    assert verdict.certificate.construction == "two_nac"
    assert verdict.certificate.verify(verdict.reduced)
    t_right = time.monotonic() - t0

    assert t_left < 1.0 and t_mid < 1.0 and t_right < 1.0
    _ok(
        f"2 triptych: no-NAC / closure-K7 / movable "
        f"({t_left:.2f}s, {t_mid:.2f}s, {t_right:.2f}s)"
    )


# -- criterion 3: the census ----------------------------------------------------


@pytest.fixture(scope="session")
def graph_stream_8():
    from movability.smallgraphs import connected_graphs_up_to

    return [encode_graph6(g) for g in connected_graphs_up_to(8)]


def test_criterion_3_census(graph_stream_8):
    import os

    t0 = time.monotonic()
    jobs = min(4, os.cpu_count() or 1)
    report = census(graph_stream_8, max_n=8, catalog=load_catalog(), jobs=jobs)
    elapsed = time.monotonic() - t0
    assert report.matches_catalog, [
        (c.closure_graph6, c.matched_catalog) for c in report.maximal_classes()
    ]
    maximal = report.maximal_classes()
    assert len(maximal) == 21
    assert {c.matched_catalog for c in maximal} == set(load_catalog())
    assert elapsed < 2 * 3600
    _ok(f"3 census over {report.graphs_seen} graphs = 21-entry catalog ({elapsed:.0f}s)")


# -- criterion 4: the Q1 embedding ----------------------------------------------


def test_criterion_4_q1_embedding():
    t0 = time.monotonic()
    g, first_red, second_red = q1_embedding_example()
    first, second = NacColoring(g, first_red), NacColoring(g, second_red)
    basis = two_nac_solution_space(g, first, second)
    assert len(basis) == 1
    reference = (
        (0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1), (-1, 0, 0),
    )
    scale = None
    for point, ref in zip(basis[0], reference):
        for c, r in zip(point, ref):
            if r == 0:
                assert c == 0
            elif scale is None:
                scale = Fraction(c, r)
            else:
                assert c == scale * r
    assert scale not in (None, 0)
    embedding = two_nac_embedding(g, first, second, seed=0)
    motion = motion_from_embedding(embedding, deltoid_motion())
    verify_compatibility(motion)  # raises unless every edge length is constant
    report = verify_injectivity(motion)
    assert report.proper
    assert (0, 1, 6) in report.collinear_triples
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    _ok(f"4 Q1 embedding basis and proper motion ({elapsed:.2f}s)")


# -- criterion 5: S5 -------------------------------------------------------------


def test_criterion_5_s5():
    t0 = time.monotonic()
    labeling, motion = s5_motion(Fraction(2))
    assert labeling[(0, 4)] == Fraction(9, 25)
    assert labeling[(3, 4)] == Fraction(64, 25)
    # lambda(3,4) = lambda(0,4) + lambda(0,3) as lengths: 8/5 = 3/5 + 1
    assert Fraction(8, 5) == Fraction(3, 5) + Fraction(1)
    for u, v in motion.graph.sorted_edges():
        d2 = motion.squared_distance(u, v)
        assert d2.is_constant()
        assert d2.constant_value().re == labeling[(u, v)]
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    _ok(f"5 S5 closed-form labeling at a=2 ({elapsed:.2f}s)")


# -- criterion 6: G25 -------------------------------------------------------------


def test_criterion_6_g25():
    t0 = time.monotonic()
    g25 = ring_of_complete_bipartite()
    assert g25.n == 25 and len(g25.edges) == 125
    witnesses = nac_witnesses(g25)
    assert len(witnesses) == 25
    assert all(is_nac(g25, w) for w in witnesses)
    assert certify_no_unicolor_pairs(g25, witnesses)
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0
    _ok(f"6 G25 witness certification ({elapsed:.2f}s)")


# -- criterion 7: property suites --------------------------------------------------


def test_criterion_7a_is_nac_oracle():
    rng = random.Random(7001)
    checked = 0
    while checked < 500:
        g = random_connected_graph(rng, rng.randint(3, 7), extra_edges=rng.randint(0, 4))
        if len(g.edges) > 12:
            continue
        coloring = NacColoring(g, frozenset(e for e in g.edges if rng.random() < 0.5))
        assert is_nac(g, coloring) == oracle_is_nac(g, coloring)
        checked += 1
    _ok("7a is_nac = cycle oracle on 500 random graphs")


def test_criterion_7b_enumeration_count():
    rng = random.Random(7002)
    checked = 0
    while checked < 15:
        g = random_connected_graph(rng, rng.randint(3, 6), extra_edges=rng.randint(0, 6))
        if len(g.edges) > 14:
            continue
        edges = g.sorted_edges()
        count = 0
        for mask in range(1 << len(edges)):
            red = frozenset(e for k, e in enumerate(edges) if mask >> k & 1)
            if is_nac(g, NacColoring(g, red)):
                count += 1
        assert len(enumerate_nac(g)) == count
        checked += 1
    _ok("7b enumeration count = exhaustive filter")


def test_criterion_7c_closure_monotone_idempotent():
    rng = random.Random(7003)
    for _ in range(200):
        g = random_connected_graph(rng, rng.randint(3, 6), extra_edges=rng.randint(1, 4))
        closure = constant_distance_closure(g).closure
        assert constant_distance_closure(closure).closure == closure
        edges = g.sorted_edges()
        rng.shuffle(edges)
        for e in edges:
            h = Graph(g.n, g.edges - {e})
            if h.is_connected() and h.edges:
                assert constant_distance_closure(h).closure.edges <= closure.edges
                break
    _ok("7c closure monotone under subgraphs and idempotent (200 cases)")


def _bundled_motions():
    quad = deltoid_motion()
    g, first_red, second_red = q1_embedding_example()
    emb = two_nac_embedding(
        g, NacColoring(g, first_red), NacColoring(g, second_red), seed=0
    )
    q1_motion = motion_from_embedding(emb, deltoid_motion())
    _, s5 = s5_motion(Fraction(2))
    return {"deltoid": quad.motion, "q1": q1_motion, "s5": s5}


def test_criterion_7d_wz_and_cycle_sums():
    for name, m in _bundled_motions().items():
        lab = verify_compatibility(m)
        for u, v in m.graph.sorted_edges():
            w = w_function(m, u, v)
            z = z_function(m, u, v)
            prod = w * z
            assert prod.is_constant()
            value = prod.constant_value()
            assert value.im == 0 and value.re == lab[(u, v)]
        for cycle in all_simple_cycles(m.graph):
            total = RationalFunction.const(0)
            for a, b in zip(cycle, cycle[1:] + (cycle[0],)):
                total = total + w_function(m, a, b)
            assert total.is_zero()
    _ok("7d W*Z = lambda^2 and zero cycle sums on all bundled motions")


def test_criterion_7e_refix_invariance():
    motions = _bundled_motions()
    for name in ("deltoid", "q1"):
        m = motions[name]
        lab = verify_compatibility(m)
        active = {c.red for c in active_nac_colorings(m).colorings}
        for e in sorted(m.graph.edges):
            try:
                refixed = refix_edge(m, *e)
            except Exception:
                raise AssertionError(f"refix to {e} failed on {name}")
            assert verify_compatibility(refixed) == lab
            assert {c.red for c in active_nac_colorings(refixed).colorings} == active
    _ok("7e refix preserves labeling and active set (deltoid, Q1)")


def test_criterion_7f_tracker_agreement():
    quad = deltoid_motion()
    m = quad.motion
    start = np.array(m.realize_float(1.0))
    path = track_motion(
        m.induced_labeling(), start, (0, 1), steps=100, step_size=0.04, tol=1e-12
    )
    worst = 0.0
    for sample in path.samples:
        x2, y2 = sample.coords[2]
        if abs(y2) < 1e-6:
            continue
        ratio = x2 / y2
        disc = (3 * ratio) ** 2 + 8
        best = math.inf
        for t in ((3 * ratio + math.sqrt(disc)) / 2, (3 * ratio - math.sqrt(disc)) / 2):
            exact = np.array(m.realize_float(t))
            best = min(best, float(np.max(np.abs(exact - sample.coords))))
        worst = max(worst, best)
    assert worst <= 1e-8
    _ok(f"7f tracker agrees with the exact deltoid curve (max err {worst:.1e})")


def test_criterion_7g_glued_labelings_track():
    from movability.gluing import glued_s1, glued_s2, glued_s3

    s1 = glued_s1(samples=110)
    result = s1.result
    assert len(result.merged_samples) >= 100
    assert result.injectivity_margin > 0
    assert result.max_labeling_residual() < 1e-9
    assert result.distance_variation(*s1.watched_pair) > 1e-3

    for recipe in (glued_s2, glued_s3):
        construction = recipe()
        path = construction.track(steps=110)
        assert len(path.samples) >= 100
        assert path.injectivity_margin > 0
        assert path.watched_variation > 1e-3
    _ok("7g S1-S3 glued labelings: 100+ injective samples, flexing witness")
