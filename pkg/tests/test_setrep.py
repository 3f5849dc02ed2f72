import math

import numpy as np
import pytest

from medkura.errors import EmptyOnWindow, InvalidGeometry
from medkura.setrep import (
    Circle,
    Line,
    ParamFamily,
    Parabola,
    PointSet,
    Ray,
    Segment,
    SetOracle,
    SqrtGraph,
    Window,
    circle,
    geometric_schedule,
    of,
    point,
    restrict_to_window,
    sample_set,
    union,
)

TENT = of(Ray((0, 0), (1, 1)), Ray((0, 0), (-1, 1)))


def test_window_validation():
    with pytest.raises(InvalidGeometry):
        Window(0, 0, 0, 1, 0.1)
    with pytest.raises(InvalidGeometry):
        Window(0, 0, 1, 1, 1.5)
    with pytest.raises(InvalidGeometry):
        Window(0, 0, 1, 1, -0.1)


def test_window_nodes_row_major():
    w = Window(-1, 0, 1, 1, 0.5)
    nodes = w.nodes()
    assert w.shape == (3, 5)
    assert len(nodes) == 15
    np.testing.assert_allclose(nodes[:5, 1], 0.0)
    np.testing.assert_allclose(nodes[:5, 0], [-1, -0.5, 0, 0.5, 1])


def test_window_axes_snap_zero():
    xs, ys = Window.square(2, 0.02).axes()
    assert 0.0 in xs and 0.0 in ys


def test_unit_circle_sample():
    pts = sample_set(circle(0, 0, 1), Window.square(2, 0.01), 0.01)
    assert len(pts) >= 628
    np.testing.assert_allclose(np.hypot(*pts.T), 1.0, atol=1e-12)
    gaps = np.hypot(*np.diff(pts, axis=0).T)
    assert gaps.max() <= 0.01 + 1e-12


def test_tent_sample_on_window():
    w = Window.square(1, 0.04)
    pts = sample_set(TENT, w, 0.01)
    np.testing.assert_allclose(pts[:, 1], np.abs(pts[:, 0]), atol=1e-12)
    assert w.contains(pts).all()
    assert np.abs(pts[:, 0]).max() == pytest.approx(1.0, abs=0.01)


def test_halfline_sample():
    ray = of(Ray((0, 0), (0, 1)))
    pts = sample_set(ray, Window.square(1, 0.04), 0.01)
    np.testing.assert_allclose(pts[:, 0], 0.0)
    ys = np.sort(pts[:, 1])
    assert ys[0] == 0.0
    assert ys[-1] == pytest.approx(1.0)
    assert np.diff(ys).max() <= 0.01 + 1e-12


def test_sample_set_empty_on_window():
    far = circle(100, 100, 1)
    with pytest.raises(EmptyOnWindow):
        sample_set(far, Window.square(1, 0.1), 0.01)


def test_restrict_to_window():
    w = Window.square(1, 0.1)
    np.testing.assert_array_equal(restrict_to_window([(0, 0), (5, 5)], w), [[0, 0]])
    assert len(restrict_to_window([], w)) == 0
    pts = np.array([[0, 0.5], [0, 2], [0, 1.0]])
    np.testing.assert_array_equal(restrict_to_window(pts, w), pts[[0, 2]])
    with pytest.raises(InvalidGeometry):
        restrict_to_window(pts, w, -1)


@pytest.mark.parametrize(
    "oracle",
    [
        circle(0, 0, 1),
        TENT,
        of(Segment((-1, -1), (1, 0.5))),
        of(Line((0, 0), (1, 2))),
        union(point(0.3, 0.2), circle(0, 0, 0.5)),
    ],
)
def test_exact_distance_agrees_with_sample(oracle):
    w = Window.square(1.5, 0.02)
    eps = 0.005
    pts = oracle.sample(w.inflated(2 * w.diag), eps)
    rng = np.random.default_rng(0)
    q = rng.uniform(-1.5, 1.5, size=(1000, 2))
    brute = np.min(np.hypot(q[:, None, 0] - pts[None, :, 0], q[:, None, 1] - pts[None, :, 1]), axis=1)
    assert np.abs(oracle.exact_distance(q) - brute).max() <= eps


def test_graph_samples_lie_on_graph():
    par = Parabola(4.0, -4.0)
    pts = par.sample(Window(-2, -5, 2, 5, 0.02).box, 0.005)
    np.testing.assert_allclose(pts[:, 1], 4 * pts[:, 0] ** 2 - 4, atol=1e-9)
    gaps = np.hypot(*np.diff(pts[np.argsort(pts[:, 0])], axis=0).T)
    assert gaps.max() <= 0.005 + 1e-9
    sq = SqrtGraph(0.25)
    pts = sq.sample(Window(-1, 0, 1, 2, 0.02).box, 0.005)
    np.testing.assert_allclose(pts[:, 1], np.sqrt(pts[:, 0] ** 2 + 0.0625), atol=1e-9)


def test_scaling_is_exact():
    X = union(circle(1, 0, 1), of(Ray((0, 0), (1, 1))))
    Y = X.scaled(4.0)
    q = np.random.default_rng(1).uniform(-3, 3, size=(100, 2))
    np.testing.assert_allclose(Y.exact_distance(q), 4 * X.exact_distance(q / 4), atol=1e-12)


def test_oracle_json_roundtrip():
    X = SetOracle((Circle((0, 0), 1.0), PointSet(((0, 0),)), Ray((1, 0), (1, 0)),
                   Line((0, 0), (0, 1)), Segment((0, 0), (1, 1)), Parabola(2.0, -1.0), SqrtGraph(0.5)))
    Y = SetOracle.from_json(X.to_json())
    assert Y.pieces == X.pieces


def test_polyline_json_with_rays():
    doc = {"kind": "polyline", "vertices": [[-2, 1], [0, 0], [2, 1]], "ray_start": True, "ray_end": True}
    X = SetOracle.from_json(doc)
    assert all(isinstance(p, Ray) for p in X.pieces)
    assert X.exact_distance([(0, 1)])[0] == pytest.approx(2 / math.sqrt(5))


def test_geometric_schedule():
    s = geometric_schedule(0.8, 4)
    np.testing.assert_allclose(s, [0.8, 0.64, 0.512, 0.4096])
    s = geometric_schedule(0.5, 4, signed=True)
    assert s == (0.5, -0.25, 0.125, -0.0625)


def test_family_schedule_validation():
    at = lambda t: circle(0, 0, abs(t))  # noqa: E731
    with pytest.raises(InvalidGeometry):
        ParamFamily(at, (), point(0, 0))
    with pytest.raises(InvalidGeometry):
        ParamFamily(at, (0.5, 0.0), point(0, 0))
    with pytest.raises(InvalidGeometry):
        ParamFamily(at, (0.5, -0.5), point(0, 0))
    fam = ParamFamily(at, (0.5, -0.25, 0.125), point(0, 0))
    assert fam.tail(2) == (-0.25, 0.125)
