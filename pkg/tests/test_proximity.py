import math

import numpy as np
import pytest

from medkura.errors import OnSet, ToleranceConflict
from medkura.params import Params
from medkura.proximity import (
    classify,
    distance,
    distance_gradient,
    distances,
    nearest_points,
    prepare,
    squared_distance,
)
from medkura.setrep import Line, Parabola, Ray, Window, circle, of, point

TENT = of(Ray((0, 0), (1, 1)), Ray((0, 0), (-1, 1)))
X_AXIS = of(Line((0, 0), (1, 0)))
Y_AXIS = of(Line((0, 0), (0, 1)))
PARABOLA = of(Parabola(1.0, -1.0))  # y = x^2 - 1


def brute_distance(oracle, window, eps, q):
    """Exhaustive scan over a sample four times denser than the default one."""
    pts = oracle.sample(window.inflated(2 * window.diag), eps / 4)
    q = np.atleast_2d(q)
    return np.min(np.hypot(q[:, None, 0] - pts[None, :, 0], q[:, None, 1] - pts[None, :, 1]), axis=1)


def test_distance_circle_centre():
    assert distance((0, 0), circle(0, 0, 1), Window.square(2, 0.02)) == pytest.approx(1.0)
    assert distance((0, 0), circle(0, 0, 0.5), Window.square(2, 0.02)) == pytest.approx(0.5)


def test_distance_tent():
    w = Window.square(2, 0.02)
    d = distance((0, 1), TENT, w)
    assert d == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
    assert d == pytest.approx(brute_distance(TENT, w, 0.005, (0, 1))[0], abs=0.005)


def test_distance_without_closed_form_uses_samples():
    w = Window(-2, -5, 2, 5, 0.02)
    assert not PARABOLA.has_exact
    d = distance((0, 2), PARABOLA, w)
    assert d == pytest.approx(math.sqrt(2.75), abs=w.h / 4)
    assert d == pytest.approx(brute_distance(PARABOLA, w, w.h / 4, (0, 2))[0], abs=w.h / 4)


def test_squared_distance():
    w = Window.square(2, 0.02)
    assert squared_distance((0, 0), circle(0, 0, 1), w) == pytest.approx(1.0)
    assert squared_distance((0.6, 0.8), circle(0, 0, 1), w) == pytest.approx(0.0, abs=1e-15)
    assert squared_distance((0, 2), PARABOLA, Window(-2, -5, 2, 5, 0.02)) == pytest.approx(2.75, abs=0.02)


def test_nearest_points_circle_centre_many():
    r = nearest_points((0, 0), circle(0, 0, 1), Window.square(2, 0.02))
    assert r.cluster_count >= 8
    assert r.cluster_count == len(r.minimizers)


def test_nearest_points_tent_pair():
    r = nearest_points((0, 1), TENT, Window.square(1, 0.01))
    assert r.cluster_count == 2
    mins = r.minimizers[np.argsort(r.minimizers[:, 0])]
    np.testing.assert_allclose(mins, [[-0.5, 0.5], [0.5, 0.5]], atol=r.eta_sep)
    assert np.linalg.norm(mins[0] - mins[1]) >= r.eta_sep
    assert np.all(np.hypot(*(mins - [0, 1]).T) <= r.distance + r.eps_d)


def test_nearest_points_line_unique():
    r = nearest_points((0.5, 0), Y_AXIS, Window.square(1, 0.01))
    assert r.cluster_count == 1
    np.testing.assert_allclose(r.minimizers[0], [0, 0], atol=1e-12)


def test_tolerance_conflict():
    with pytest.raises(ToleranceConflict):
        nearest_points((0, 1), TENT, Window.square(1, 0.01), eps_d=0.01, eta_sep=0.01)


def test_gradient_examples():
    w = Window.square(5, 0.02)
    np.testing.assert_allclose(distance_gradient((0, 1), X_AXIS, w), [0, 1])
    assert distance_gradient((0, 1), TENT, w) is None
    np.testing.assert_allclose(distance_gradient((3, 4), point(0, 0), w), [0.6, 0.8])
    with pytest.raises(OnSet):
        distance_gradient((1, 0), X_AXIS, w)


def test_gradient_is_unit():
    w = Window(-2, -5, 2, 5, 0.02)
    g = distance_gradient((1.5, 2.0), PARABOLA, w)
    assert np.linalg.norm(g) == pytest.approx(1.0, abs=1e-14)


def test_classification_on_set_and_medial():
    w = Window.square(2, 0.05)
    p = Params.for_h(w.h)
    s = prepare(TENT, w, p.eps)
    c = classify(s, [(0.5, 0.5), (0, 1), (1, 0)], p)
    assert list(c.count[:2]) == [0, 2]
    assert c.count[2] == 1
    assert c.seed2[1] >= 0 and c.seed2[2] == -1


def test_classify_threads_identical():
    w = Window(-2, -5, 2, 5, 0.05)
    nodes = w.nodes()
    p1 = Params.for_h(w.h)
    p4 = Params.for_h(w.h, threads=4)
    s = prepare(PARABOLA, w, p1.eps)
    a, b = classify(s, nodes, p1), classify(s, nodes, p4)
    for x, y in zip((a.distance, a.count, a.seed, a.seed2), (b.distance, b.count, b.seed, b.seed2)):
        np.testing.assert_array_equal(x, y)


def test_distances_matches_brute_force():
    w = Window.square(1.5, 0.04)
    q = np.random.default_rng(3).uniform(-1.5, 1.5, size=(200, 2))
    for oracle in (TENT, circle(0.2, 0, 0.7)):
        np.testing.assert_allclose(distances(q, oracle, w), brute_distance(oracle, w, 0.01, q), atol=0.01)
