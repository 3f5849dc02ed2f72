import os
import subprocess
import sys

import numpy as np
import pytest

from medkura import _backend
from medkura.medial import classify_window
from medkura.params import Params
from medkura.setrep import Parabola, Ray, Window, circle, of, points

needs_ext = pytest.mark.skipif(_backend.BACKEND != "cython", reason="compiled kernel not built")

ORACLES = [
    circle(0, 0, 1),
    of(Ray((0, 0), (1, 1)), Ray((0, 0), (-1, 1))),
    of(Parabola(1.0, -1.0)),
    points((-1, 0), (1, 0), (0, 1.5)),
]


@needs_ext
@pytest.mark.parametrize("oracle", ORACLES, ids=["circle", "tent", "parabola", "points"])
def test_backends_bitwise_equal(oracle):
    w = Window.square(2, 0.05)
    p = Params.for_h(w.h)
    a = classify_window(oracle, w, p, backend="cython").result
    b = classify_window(oracle, w, p, backend="python").result
    for x, y in zip((a.distance, a.count, a.seed, a.seed2), (b.distance, b.count, b.seed, b.seed2)):
        np.testing.assert_array_equal(x, y)


@needs_ext
def test_backends_equal_random_queries():
    w = Window.square(2, 0.05)
    p = Params.for_h(w.h)
    from medkura.proximity import classify, prepare

    s = prepare(circle(0.3, -0.2, 0.9), w, p.eps)
    q = np.random.default_rng(7).uniform(-2, 2, (2000, 2))
    a = classify(s, q, p, backend="cython")
    b = classify(s, q, p, backend="python")
    np.testing.assert_array_equal(a.count, b.count)
    np.testing.assert_array_equal(a.seed, b.seed)


def test_pure_python_env_forces_fallback():
    env = dict(os.environ, MEDKURA_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import medkura; print(medkura.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_bucket_grid_csr():
    pts = np.random.default_rng(0).uniform(-1, 1, (500, 2))
    g = _backend.BucketGrid(pts, 0.1)
    assert g.offsets[-1] == len(pts)
    assert sorted(g.order) == list(range(len(pts)))
    ix = np.floor((pts[g.order, 0] - g.x0) / g.cell).astype(int)
    iy = np.floor((pts[g.order, 1] - g.y0) / g.cell).astype(int)
    assert np.all(np.diff(iy * g.nx + ix) >= 0)
