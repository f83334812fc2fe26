import math
from fractions import Fraction

import numpy as np
import pytest

from movability.constructions import deltoid_motion
from movability.track import TrackerError, track_motion


def test_deltoid_track_agrees_with_exact_curve():
    quad = deltoid_motion()
    m = quad.motion
    lab = m.induced_labeling()
    start = np.array(m.realize_float(1.0))
    path = track_motion(lab, start, (0, 1), steps=100, step_size=0.04, tol=1e-12)
    assert len(path.samples) == 101
    assert max(s.residual for s in path.samples) < 1e-10
    worst = 0.0
    checked = 0
    for sample in path.samples:
        x2, y2 = sample.coords[2]
        if abs(y2) < 1e-6:
            continue
        # recover the curve parameter from vertex 2 and compare everything
        ratio = x2 / y2
        disc = (3 * ratio) ** 2 + 8
        best = math.inf
        for t in ((3 * ratio + math.sqrt(disc)) / 2, (3 * ratio - math.sqrt(disc)) / 2):
            exact = np.array(m.realize_float(t))
            best = min(best, float(np.max(np.abs(exact - sample.coords))))
        worst = max(worst, best)
        checked += 1
    assert checked > 50
    assert worst <= 1e-8


def test_rigid_triangle_rejected():
    lab = {(0, 1): Fraction(1), (1, 2): Fraction(1), (0, 2): Fraction(1)}
    start = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    with pytest.raises(TrackerError, match="no flex"):
        track_motion(lab, start, (0, 1))


def test_bad_start_rejected():
    lab = {(0, 1): Fraction(1), (1, 2): Fraction(1), (2, 3): Fraction(1), (0, 3): Fraction(1)}
    start = np.array([[0.0, 0.0], [5.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(TrackerError, match="does not satisfy"):
        track_motion(lab, start, (0, 1))


def test_watched_distance_and_margin_reported():
    quad = deltoid_motion()
    m = quad.motion
    lab = m.induced_labeling()
    start = np.array(m.realize_float(0.7))
    path = track_motion(
        lab, start, (0, 1), steps=60, step_size=0.05, watched_pair=(0, 2)
    )
    assert path.watched_pair == (0, 2)
    assert path.watched_variation > 1e-3
    assert path.injectivity_margin >= 0
    csv = path.to_csv()
    lines = csv.strip().splitlines()
    assert lines[0].startswith("step,x0,y0")
    assert len(lines) == len(path.samples) + 1


def test_fixed_edge_must_exist():
    lab = {(0, 1): Fraction(1)}
    with pytest.raises(TrackerError):
        track_motion(lab, np.array([[0.0, 0.0], [1.0, 0.0]]), (0, 5))
