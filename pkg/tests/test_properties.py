"""Property-based checks of distance, excess and scaling invariants."""

import math

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from medkura.kuratowski import excess, hausdorff
from medkura.proximity import distance_gradient, distances
from medkura.setrep import Circle, Line, Ray, Segment, Window, of

coord = st.floats(-1.5, 1.5, allow_nan=False)
point = st.tuples(coord, coord)
unit = st.floats(0.0, 2 * math.pi).map(lambda a: (math.cos(a), math.sin(a)))


@st.composite
def oracles(draw):
    kind = draw(st.sampled_from(["circle", "ray", "segment", "line", "union"]))
    if kind == "circle":
        return of(Circle(draw(point), draw(st.floats(0.1, 1.0))))
    if kind == "ray":
        return of(Ray(draw(point), draw(unit)))
    if kind == "line":
        return of(Line(draw(point), draw(unit)))
    a = draw(point)
    u, length = draw(unit), draw(st.floats(0.1, 2.0))
    seg = Segment(a, (a[0] + length * u[0], a[1] + length * u[1]))
    if kind == "segment":
        return of(seg)
    return of(seg, Circle(draw(point), draw(st.floats(0.1, 1.0))))


point_sets = st.lists(point, min_size=1, max_size=12).map(np.array)

W = Window.square(2.0, 0.05)
FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@FAST
@given(oracles(), point, point)
def test_distance_is_one_lipschitz(X, p, q):
    d = distances([p, q], X, W)
    assert abs(d[0] - d[1]) <= math.dist(p, q) + 1e-9


@FAST
@given(oracles(), point)
def test_sampled_distance_close_to_exact(X, p):
    d = distances([p], X, W)[0]
    assert abs(d - X.exact_distance([p])[0]) <= W.h / 4 + 1e-12


@FAST
@given(oracles(), point)
def test_gradient_is_unit_or_none(X, p):
    if X.exact_distance([p])[0] < 0.05:
        return
    g = distance_gradient(p, X, W)
    if g is not None:
        assert abs(np.linalg.norm(g) - 1.0) < 1e-12


@FAST
@given(oracles(), point, st.floats(0.25, 4.0))
def test_distance_scales(X, p, lam):
    q = np.array([p])
    assert np.allclose(X.scaled(lam).exact_distance(lam * q), lam * X.exact_distance(q), atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets, point_sets)
def test_excess_triangle_inequality(A, B, C):
    assert excess(A, C) <= excess(A, B) + excess(B, C) + 1e-12


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets)
def test_excess_properties(A, B):
    assert excess(A, A) == 0.0
    assert excess(A, np.concatenate([A, B])) == 0.0
    assert hausdorff(A, B) == hausdorff(B, A) == max(excess(A, B), excess(B, A))
