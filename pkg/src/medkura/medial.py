"""Medial axis and central set estimates, ball inflation, curvature helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NonSmooth, NotUnivalent, OnSet, ZeroCurvature
from .params import Params
from .proximity import Classification, Sampled, classify, prepare
from .setrep import SetOracle, Window, as_point

BISECT_TOL = 1e-6
PROVENANCES = ("grid-classified", "analytic", "derived-limit")


@dataclass(frozen=True)
class PointSetEstimate:
    """A finite point cloud standing in for a planar set.

    An empty cloud is a valid estimate of the empty set.
    """

    points: np.ndarray
    spacing: float
    tolerances: tuple[float, float] = (0.0, 0.0)  # (eps_d, eta_sep)
    provenance: str = "grid-classified"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "points", pts)
        if not self.spacing > 0:
            raise ValueError("spacing must be positive")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __len__(self):
        return len(self.points)

    @property
    def empty(self) -> bool:
        return len(self.points) == 0

    def scaled(self, lam: float) -> "PointSetEstimate":
        return PointSetEstimate(lam * self.points, lam * self.spacing,
                                (lam * self.tolerances[0], lam * self.tolerances[1]),
                                self.provenance, dict(self.meta))

    def within(self, window: Window, margin: float = 0.0) -> "PointSetEstimate":
        keep = window.contains(self.points, margin)
        return PointSetEstimate(self.points[keep], self.spacing, self.tolerances, self.provenance, dict(self.meta))


def _estimate(pts, p: Params, provenance="grid-classified", **meta) -> PointSetEstimate:
    return PointSetEstimate(pts, p.h, (p.eps_d, p.eta_sep), provenance, meta)


def _params(window: Window, params: Params | None) -> Params:
    return Params.for_h(window.h) if params is None else params


# ---------------------------------------------------------------------------
# medial axis


@dataclass(frozen=True)
class GridClassification:
    """Classification of every node of a window grid against one oracle."""

    window: Window
    params: Params
    sampled: Sampled
    nodes: np.ndarray
    result: Classification

    @property
    def medial_nodes(self) -> np.ndarray:
        return self.nodes[self.result.medial]


def classify_window(oracle: SetOracle, window: Window, params: Params | None = None,
                    backend: str | None = None) -> GridClassification:
    p = _params(window, params)
    s = prepare(oracle, window, p.eps)
    nodes = window.nodes()
    return GridClassification(window, p, s, nodes, classify(s, nodes, p, backend))


def medial_axis(oracle: SetOracle, window: Window, params: Params | None = None,
                backend: str | None = None) -> PointSetEstimate:
    """Grid nodes off the set whose nearest points form at least two clusters."""
    g = classify_window(oracle, window, params, backend)
    return _estimate(g.medial_nodes, g.params)


# ---------------------------------------------------------------------------
# ball inflation


@dataclass(frozen=True)
class InflationResult:
    r: float
    center_at_r: tuple[float, float]
    contact_point: tuple[float, float]
    capped: bool
    distance: float

    @property
    def radius(self) -> float:
        return self.r * self.distance


def default_s_max(window: Window, d) -> np.ndarray | float:
    return 1e3 * window.diag / np.asarray(d, dtype=float)


class _Field:
    """Distance evaluator used by inflation: exact when possible, else samples."""

    def __init__(self, oracle: SetOracle, sampled: Sampled):
        self.oracle = oracle
        self.sampled = sampled
        self.exact = oracle.has_exact

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        if self.exact:
            return self.oracle.exact_distance(pts)
        return self.sampled.nearest(pts)[0]

    def contact(self, a: np.ndarray, seed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.exact:
            y = self.oracle.project(a)
        else:
            y = self.sampled.points[seed]
        return y, np.hypot(*(a - y).T)

    def base_tol(self, d: np.ndarray) -> np.ndarray:
        if self.exact:
            return np.zeros_like(d)
        # a sample neighbour of the contact sits at most ~eps^2/(2d) inside
        # the tangent ball because the ray direction is only eps-accurate
        return 2 * self.sampled.eps**2 / d


def window_exit(window: Window, y: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Largest s with y + s(a - y) inside the window, for ``a`` inside it."""
    u = a - y
    s = np.full(len(a), np.inf)
    for k, (lo, hi) in enumerate(((window.xmin, window.xmax), (window.ymin, window.ymax))):
        uk = u[:, k]
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = np.where(uk > 0, (hi - y[:, k]) / uk, np.where(uk < 0, (lo - y[:, k]) / uk, np.inf))
        s = np.minimum(s, bound)
    return np.maximum(s, 1.0)


def inflate(fld: _Field, a: np.ndarray, y: np.ndarray, d: np.ndarray, s_max: np.ndarray,
            tol_s=BISECT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized sup{s in [1, s_max] : ball(y + s(a-y), s d) misses the set}.

    Returns (r, capped).  Uses doubling then bisection on the monotone
    emptiness predicate; ``tol_s`` is a scalar or per-query tolerance in s.
    """
    n = len(a)
    u = a - y
    base = fld.base_tol(d)

    def ok(s, idx):
        c = y[idx] + s[:, None] * u[idx]
        rad = s * d[idx]
        return fld(c) >= rad - base[idx] - 1e-9 * (1.0 + rad)

    all_idx = np.arange(n)
    capped = ok(s_max, all_idx) if n else np.zeros(0, dtype=bool)
    r = s_max.copy()
    lo = np.ones(n)
    hi = s_max.copy()
    open_ = np.flatnonzero(~capped)
    # doubling
    s = np.where(2.0 < hi, 2.0, hi)
    todo = open_.copy()
    while len(todo):
        st = s[todo]
        good = ok(st, todo)
        lo[todo[good]] = st[good]
        hi[todo[~good]] = st[~good]
        grow = todo[good]
        s[grow] = np.minimum(2 * s[grow], hi[grow])
        todo = grow[s[grow] < hi[grow]]
    tol_s = np.broadcast_to(np.asarray(tol_s, dtype=float), (n,))
    todo = open_[hi[open_] - lo[open_] > tol_s[open_]]
    while len(todo):
        mid = 0.5 * (lo[todo] + hi[todo])
        good = ok(mid, todo)
        lo[todo[good]] = mid[good]
        hi[todo[~good]] = mid[~good]
        todo = todo[hi[todo] - lo[todo] > tol_s[todo]]
    r[open_] = lo[open_]
    return r, capped


def ball_inflation(a, oracle: SetOracle, window: Window, s_max: float | None = None,
                   params: Params | None = None) -> InflationResult:
    """Inflate the ball tangent at m(a) through ``a`` along the normal ray."""
    p = _params(window, params)
    s = prepare(oracle, window, p.eps)
    av = np.asarray(as_point(a))[None, :]
    c = classify(s, av, p)
    if c.count[0] == 0:
        raise OnSet(f"point {tuple(av[0])} lies on the set")
    if c.count[0] >= 2:
        raise NotUnivalent(f"point {tuple(av[0])} has {int(c.count[0])} nearest clusters")
    fld = _Field(oracle, s)
    y, d = fld.contact(av, c.seed)
    if not d[0] > 0:
        raise OnSet(f"point {tuple(av[0])} lies on the set")
    sm = np.array([default_s_max(window, d[0]) if s_max is None else float(s_max)])
    if not sm[0] > 1:
        raise ValueError("s_max must exceed 1")
    r, capped = inflate(fld, av, y, d, sm)
    center = y[0] + r[0] * (av[0] - y[0])
    return InflationResult(float(r[0]), (float(center[0]), float(center[1])),
                           (float(y[0, 0]), float(y[0, 1])), bool(capped[0]), float(d[0]))


def emptiness_predicate(a, oracle: SetOracle, window: Window, params: Params | None = None) -> Callable[[float], bool]:
    """The predicate bisected by :func:`ball_inflation`, for scans and tests."""
    p = _params(window, params)
    s = prepare(oracle, window, p.eps)
    av = np.asarray(as_point(a))[None, :]
    c = classify(s, av, p)
    fld = _Field(oracle, s)
    y, d = fld.contact(av, c.seed)
    base = fld.base_tol(d)[0]
    u = av[0] - y[0]

    def pred(sv):
        """True where the scaled ball misses the set; accepts a scalar or an array of scales."""
        sa = np.atleast_1d(np.asarray(sv, dtype=float))
        rad = sa * d[0]
        ok = fld(y[0] + sa[:, None] * u) >= rad - base - 1e-9 * (1.0 + rad)
        return bool(ok[0]) if np.ndim(sv) == 0 else ok

    return pred


# ---------------------------------------------------------------------------
# central set


def thin(pts: np.ndarray, cell: float) -> np.ndarray:
    """Keep the first point of every ``cell``-sized grid cell (order preserving)."""
    if len(pts) == 0:
        return pts.reshape(0, 2)
    key = np.floor(pts / cell).astype(np.int64)
    _, first = np.unique(key, axis=0, return_index=True)
    return pts[np.sort(first)]


def central_set(oracle: SetOracle, window: Window, s_max: float | None = None,
                params: Params | None = None, grid: GridClassification | None = None,
                backend: str | None = None) -> PointSetEstimate:
    """Medial points plus finite inflation endpoints from every univalent node.

    Endpoints are kept only where the grid resolution can confirm them,
    i.e. where classification at the endpoint itself reports two or more
    clusters separated by at least eta_sep + h, so that neighbouring nodes
    resolve them too; the rest are centres the medial estimate cannot see.
    """
    g = grid if grid is not None else classify_window(oracle, window, params, backend)
    p = g.params
    uni = np.flatnonzero(g.result.count == 1)
    fld = _Field(oracle, g.sampled)
    a = g.nodes[uni]
    y, d = fld.contact(a, g.result.seed[uni])
    good = d > 0
    a, y, d = a[good], y[good], d[good]
    sm = default_s_max(window, d) if s_max is None else np.full(len(d), float(s_max))
    # centres past the window exit are discarded anyway
    sm = np.minimum(sm, window_exit(window, y, a) * (1 + 1e-12))
    # centres only need to be placed to h/20; finer bisection is wasted here
    r, capped = inflate(fld, a, y, d, sm, np.maximum(BISECT_TOL, 0.05 * p.h / d))
    ends = y + r[:, None] * (a - y)
    keep = ~capped & window.contains(ends)
    ends = thin(ends[keep], p.h / 2)
    if len(ends):
        ce = classify(g.sampled, ends, p, backend)
        S = g.sampled.points
        sep = np.full(len(ends), -1.0)
        two = ce.count >= 2
        sep[two] = np.hypot(*(S[ce.seed[two]] - S[ce.seed2[two]]).T)
        ends = ends[sep >= p.eta_sep + p.h]
    pts = np.concatenate([g.medial_nodes, ends]) if len(ends) else g.medial_nodes
    return _estimate(pts, p, n_medial=int(len(g.medial_nodes)), n_inflated=int(len(ends)))


@dataclass(frozen=True)
class SandwichReport:
    ok: bool
    excess_m_in_c: float
    excess_c_in_m: float
    tol: float

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        from .kuratowski import tol_number

        return {"ok": self.ok, "excess_M_C": tol_number(self.excess_m_in_c, self.tol),
                "excess_C_M": tol_number(self.excess_c_in_m, self.tol)}


def sandwich_check(M: PointSetEstimate, C: PointSetEstimate, tol: float) -> SandwichReport:
    """Both one-sided excesses of M and C within ``tol``."""
    from .kuratowski import excess

    e1 = excess(M, C)
    e2 = excess(C, M)
    return SandwichReport(bool(e1 <= tol and e2 <= tol), e1, e2, tol)


# ---------------------------------------------------------------------------
# curvature and focal points


@dataclass(frozen=True)
class SmoothGraph:
    """Analytic graph y = f(x) with closed-form derivatives."""

    f: Callable[[float], float]
    df: Callable[[float], float]
    d2f: Callable[[float], float] | None = None
    descriptor: str = ""


def line_graph(slope: float = 0.0, intercept: float = 0.0) -> SmoothGraph:
    return SmoothGraph(lambda x: slope * x + intercept, lambda x: slope, lambda x: 0.0,
                       f"y = {slope:g} x + {intercept:g}")


def parabola_graph(a: float, b: float = 0.0) -> SmoothGraph:
    return SmoothGraph(lambda x: a * x * x + b, lambda x: 2 * a * x, lambda x: 2 * a,
                       f"y = {a:g} x^2 + {b:g}")


def sqrt_graph(c: float) -> SmoothGraph:
    def f(x):
        return math.sqrt(x * x + c * c)

    return SmoothGraph(f, lambda x: x / f(x), lambda x: c * c / f(x) ** 3, f"y = sqrt(x^2 + {c:g}^2)")


def curvature_of_graph(y, x0: float) -> float:
    """Signed curvature y'' / (1 + y'^2)^(3/2) at ``x0``.

    ``y`` is any object with ``df`` and ``d2f`` methods or attributes, such
    as :class:`SmoothGraph` or the graph pieces of :mod:`medkura.setrep`.
    """
    df = getattr(y, "df", None)
    d2f = getattr(y, "d2f", None)
    if df is None or d2f is None:
        raise NonSmooth("descriptor has no second derivative")
    try:
        g1 = float(np.asarray(df(x0)))
        g2 = float(np.asarray(d2f(x0)))
    except (ZeroDivisionError, ValueError) as exc:
        raise NonSmooth(f"not twice differentiable at {x0}") from exc
    if not (math.isfinite(g1) and math.isfinite(g2)):
        raise NonSmooth(f"not twice differentiable at {x0}")
    return g2 / (1.0 + g1 * g1) ** 1.5


def focal_point(p, kappa: float, nu) -> tuple[float, float]:
    """Centre of curvature p + nu / kappa."""
    if not kappa > 0:
        raise ZeroCurvature(f"curvature {kappa} has no focal point on this side")
    px, py = as_point(p)
    nx, ny = as_point(nu)
    return (px + nx / kappa, py + ny / kappa)


def unique_nearest_by_focal(x, p, kappa: float) -> bool:
    """Sufficient test for a unique nearest point: |x - p| < 1/kappa.

    ``False`` only means the test is inconclusive.
    """
    xv = as_point(x)
    pv = as_point(p)
    dist = math.hypot(xv[0] - pv[0], xv[1] - pv[1])
    if kappa <= 0:
        return True
    return dist < 1.0 / kappa

