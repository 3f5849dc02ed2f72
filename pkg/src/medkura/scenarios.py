"""Catalog of one-parameter families with known medial axes, plus tangent cones.

Each scenario knows its family, its default window and the analytically
expected medial sets, so that numerical estimates can be compared with
closed forms.  Expected sets are given as oracles (``None`` is the empty
set) and evaluated to point samples on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import OriginMissing
from .kuratowski import (
    ConvergenceReport,
    analyze_family,
    excess,
    limits_of_estimates,
    tol_number,
)
from .medial import PointSetEstimate
from .params import Params
from .proximity import classify, distances, prepare
from .setrep import (
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
    geometric_schedule,
    of,
)

Expected = Callable[[float], SetOracle | None]


def _sgn(t: float) -> float:
    return 1.0 if t > 0 else -1.0


@dataclass(frozen=True)
class Scenario:
    name: str
    anchor: str  # defining formula of the sections
    at: Callable[[float], SetOracle] = field(compare=False)
    limit: SetOracle
    window: Window
    expected_M0: SetOracle | None
    expected_verdict: str
    expected_convergence: bool
    expected_Mt: Expected | None = field(default=None, compare=False)
    signed: bool = False
    schedule_kind: str = "geometric"  # or "reciprocal": t = 1/n
    expected_limsup_M: SetOracle | None = None
    expected_liminf_M: SetOracle | None = None
    expected_M_limit: SetOracle | None = None
    notes: str = ""

    def schedule(self, rho: float = 0.8, steps: int = 40, signed: bool | None = None) -> tuple[float, ...]:
        signed = self.signed if signed is None else signed
        if self.schedule_kind == "reciprocal":
            return tuple(1.0 / n for n in range(1, steps + 1))
        return geometric_schedule(rho, steps, signed)

    def family(self, rho: float = 0.8, steps: int = 40, signed: bool | None = None) -> ParamFamily:
        return ParamFamily(self.at, self.schedule(rho, steps, signed), self.limit, self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "window": self.window.to_json(),
            "signed": self.signed,
            "schedule": self.schedule_kind,
            "expected_verdict": self.expected_verdict,
            "expected_convergence": self.expected_convergence,
            "limit": self.limit.to_json(),
            "expected_M0": None if self.expected_M0 is None else self.expected_M0.to_json(),
            "notes": self.notes,
        }


def evaluate(desc: SetOracle | None, window: Window, spacing: float | None = None) -> PointSetEstimate:
    """Sample an analytic descriptor on the window (empty for ``None``)."""
    h = window.h
    spacing = h / 4 if spacing is None else spacing
    if desc is None:
        return PointSetEstimate(np.empty((0, 2)), h, provenance="analytic")
    pts = desc.sample(window.box, spacing)
    pts = pts[window.contains(pts)] if len(pts) else pts
    return PointSetEstimate(pts, h, provenance="analytic")


# ---------------------------------------------------------------------------
# section builders


def _vlines(xs) -> SetOracle:
    return of(*(Line((x, 0.0), (0.0, 1.0)) for x in xs))


def _tent(slope: float, apex=(0.0, 0.0)) -> SetOracle:
    """Graph y = apex_y + slope*|x - apex_x| as two rays."""
    ax, ay = apex
    return of(Ray((ax, ay), (1.0, slope)), Ray((ax, ay), (-1.0, slope)))


def _bisector_ray(foot, u1, u2) -> Ray:
    a = np.asarray(u1, float) / math.hypot(*u1)
    b = np.asarray(u2, float) / math.hypot(*u2)
    return Ray(foot, tuple(a + b))


def _trapezoid(foot: float, height: float) -> SetOracle:
    """Plateau-free tent of given height joined to the axis at +-foot."""
    return of(
        Ray((-foot, 0.0), (-1.0, 0.0)),
        Segment((-foot, 0.0), (0.0, height)),
        Segment((0.0, height), (foot, 0.0)),
        Ray((foot, 0.0), (1.0, 0.0)),
    )


def _trapezoid_medial(foot: float, height: float) -> SetOracle:
    return of(
        Ray((0.0, height), (0.0, -1.0)),
        _bisector_ray((foot, 0.0), (-foot, height), (1.0, 0.0)),
        _bisector_ray((-foot, 0.0), (foot, height), (-1.0, 0.0)),
    )


X_AXIS = of(Line((0.0, 0.0), (1.0, 0.0)))
Y_AXIS = of(Line((0.0, 0.0), (0.0, 1.0)))
UP = of(Ray((0.0, 0.0), (0.0, 1.0)))
DOWN = of(Ray((0.0, 0.0), (0.0, -1.0)))
TENT = _tent(1.0)
ORIGIN = of(PointSet(((0.0, 0.0),)))
S1 = of(Circle((0.0, 0.0), 1.0))
HALF_S1 = of(Circle((0.0, 0.0), 0.5))


def _circles() -> Scenario:
    return Scenario(
        "circles", "x^2 + y^2 = t^2",
        lambda t: of(Circle((0.0, 0.0), abs(t))), ORIGIN, Window.square(2.0, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: ORIGIN,
        notes="the dimension of the sections drops at the limit",
    )


def _focal_shift(t: float) -> float:
    return t * t / 2 - 1 / (t * t)


def _parabola_shift() -> Scenario:
    return Scenario(
        "parabola-shift", "t^2 y = x^2 - 1",
        lambda t: of(Parabola(1 / (t * t), -1 / (t * t))), _vlines((-1.0, 1.0)), Window(-2, -5, 2, 5, 0.02),
        expected_M0=Y_AXIS, expected_verdict="PASS", expected_convergence=True,
        expected_Mt=lambda t: of(Ray((0.0, _focal_shift(t)), (0.0, 1.0))),
        expected_M_limit=Y_AXIS,
        notes="M_t = {0} x (f_t, inf) with focal ordinate f_t = t^2/2 - 1/t^2",
    )


def _parabola_slit() -> Scenario:
    return Scenario(
        "parabola-slit", "t^2 y = x^2",
        lambda t: of(Parabola(1 / (t * t), 0.0)), UP, Window(-2, -1, 2, 3, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: of(Ray((0.0, t * t / 2), (0.0, 1.0))),
        expected_M_limit=UP,
        notes="limsup of M_t is the half-line {0} x [0, inf), strictly larger than the empty M_0",
    )


def _tent_family() -> Scenario:
    return Scenario(
        "tent-family", "y = t|x|",
        lambda t: _tent(t), X_AXIS, Window.square(2.0, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: UP if t > 0 else DOWN, signed=True,
        notes="M_t flips between the upper and lower half-axis with the sign of t, so M_t has no limit",
    )


def _hyperbola() -> Scenario:
    return Scenario(
        "hyperbola", "v = sqrt(u^2 + t^2)  (xy = t^2 rotated by 45 degrees)",
        lambda t: of(SqrtGraph(abs(t))), TENT, Window(-1, 0, 1, 2, 0.02),
        expected_M0=UP, expected_verdict="PASS", expected_convergence=True,
        expected_Mt=lambda t: of(Ray((0.0, 2 * abs(t)), (0.0, 1.0))),
        expected_M_limit=UP,
        notes="M_t = {0} x (2|t|, inf) tends to the closure of M_0; grid estimates do not see the difference",
    )


def _halfline_flip() -> Scenario:
    return Scenario(
        "halfline-flip", "y = sgn(t) x, sgn(t) x >= 0",
        lambda t: of(Ray((0.0, 0.0), (_sgn(t), 1.0))), TENT, Window.square(2.0, 0.02),
        expected_M0=UP, expected_verdict="NOT-APPLICABLE", expected_convergence=False,
        expected_Mt=lambda t: None, signed=True,
        notes="liminf X_t is the origin and limsup X_t the tent; every M_t is empty while M_0 is not",
    )


def _cross_flip() -> Scenario:
    return Scenario(
        "cross-flip", "y = sgn(t)|x|",
        lambda t: _tent(_sgn(t)), of(Line((0.0, 0.0), (1.0, 1.0)), Line((0.0, 0.0), (1.0, -1.0))),
        Window.square(2.0, 0.02),
        expected_M0=of(Line((0.0, 0.0), (1.0, 0.0)), Line((0.0, 0.0), (0.0, 1.0))),
        expected_verdict="NOT-APPLICABLE", expected_convergence=False,
        expected_Mt=lambda t: UP if t > 0 else DOWN, signed=True,
        expected_liminf_M=ORIGIN, expected_limsup_M=Y_AXIS,
        notes="X_0 = {x^2 = y^2}; liminf M_t is the origin, limsup M_t the whole vertical axis",
    )


def _plane_plus_line() -> Scenario:
    return Scenario(
        "plane-plus-line", "{0} U {t} on the axis",
        lambda t: of(PointSet(((0.0, 0.0), (t, 0.0)))), ORIGIN, Window.square(2.0, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: of(Line((t / 2, 0.0), (0.0, 1.0))),
        notes=(
            "one-parameter slice t -> (t, 0) of the two-parameter family (R^2 x {0}) U {(x, 0, x)};"
            " the original fibre {0, t} of R is embedded on the horizontal axis, so M_t is the"
            " bisector line x = t/2. Off the slice the sections are {0} and M is empty, which is why"
            " the lower limit is taken only over parameters with nonempty M_t. The two-parameter"
            " statement itself is out of scope"
        ),
    )


def _double_circle() -> Scenario:
    three_q = of(Circle((0.0, 0.0), 0.75))
    return Scenario(
        "double-circle", "S^1 U {0} (t > 0), S^1 U S^1/2 (t < 0)",
        lambda t: S1.union(ORIGIN) if t > 0 else S1.union(HALF_S1),
        of(Circle((0.0, 0.0), 1.0), Circle((0.0, 0.0), 0.5), PointSet(((0.0, 0.0),))),
        Window.square(1.5, 0.02),
        expected_M0=of(Circle((0.0, 0.0), 0.75), Circle((0.0, 0.0), 0.25)),
        expected_verdict="NOT-APPLICABLE", expected_convergence=False,
        expected_Mt=lambda t: HALF_S1 if t > 0 else three_q.union(ORIGIN), signed=True,
        expected_liminf_M=None, expected_limsup_M=of(Circle((0.0, 0.0), 0.5), Circle((0.0, 0.0), 0.75),
                                                     PointSet(((0.0, 0.0),))),
        notes="liminf X_t = S^1 while limsup X_t = X_0; the medial limits bear no relation to M_0",
    )


def _trapezoid_a() -> Scenario:
    return Scenario(
        "trapezoid-a", "axis outside |x| >= 1/t joined by a tent of height t",
        lambda t: _trapezoid(1 / t, t), X_AXIS, Window.square(2.0, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: _trapezoid_medial(1 / t, t), expected_M_limit=DOWN,
        notes=(
            "the tent has slopes -+t^2 and meets the axis at +-1/t so that the set is connected;"
            " the limit of M_t reduces to {0} x (-inf, 0]"
        ),
    )


def _trapezoid_b() -> Scenario:
    feet = of(Ray((-1.0, 0.0), (0.0, 1.0)), Ray((1.0, 0.0), (0.0, 1.0)))
    return Scenario(
        "trapezoid-b", "axis outside |x| >= 1 joined by the tent y = t - t|x|",
        lambda t: _trapezoid(1.0, t), X_AXIS, Window.square(2.0, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: _trapezoid_medial(1.0, t), expected_M_limit=DOWN.union(feet),
        notes="same limit set as trapezoid-a but the limit of M_t also contains {-1, 1} x [0, inf)",
    )


def _escaping_points() -> Scenario:
    return Scenario(
        "escaping-points", "{0} U {1/t} on the axis, t = 1/n",
        lambda t: of(PointSet(((0.0, 0.0), (1.0 / t, 0.0)))), ORIGIN, Window.square(2.0, 0.02),
        expected_M0=None, expected_verdict="VACUOUS-PASS", expected_convergence=True,
        expected_Mt=lambda t: of(Line((0.5 / t, 0.0), (0.0, 1.0))), schedule_kind="reciprocal",
        notes=(
            "sections of (R x {0}) U {(1/n, n)}, embedded on the horizontal axis; a closed but"
            " non-definable family whose extra point escapes every compact"
        ),
    )


_BUILDERS = (
    _circles, _parabola_shift, _parabola_slit, _tent_family, _hyperbola, _halfline_flip,
    _cross_flip, _plane_plus_line, _double_circle, _trapezoid_a, _trapezoid_b, _escaping_points,
)


def builtin_scenarios() -> list[Scenario]:
    return [b() for b in _BUILDERS]


def lookup(name: str) -> Scenario:
    for s in builtin_scenarios():
        if s.name == name:
            return s
    raise KeyError(f"unknown scenario {name!r}")


# ---------------------------------------------------------------------------
# expected-vs-computed medial sets


@dataclass(frozen=True)
class MedialComparison:
    soundness: float  # e(computed, expected)
    coverage: float  # e(resolvable expected, computed)
    n_resolvable: int
    tol: float

    @property
    def ok(self) -> bool:
        return self.soundness <= self.tol and self.coverage <= self.tol


def compare_medial(computed: PointSetEstimate, expected: SetOracle | None, oracle: SetOracle,
                   window: Window, params: Params | None = None) -> MedialComparison:
    """Hausdorff-type comparison restricted to what the grid can resolve.

    Coverage is measured only over expected points the estimator could
    classify: off the set by more than 2 eps + h, away from the window
    boundary, and reported with two clusters when queried directly.
    """
    p = Params.for_h(window.h) if params is None else params
    tol = 2 * p.h + p.eta_sep
    ex = evaluate(expected, window, p.eps)
    sound = excess(computed, ex)
    pts = ex.points
    if len(pts):
        d = distances(pts, oracle, window, p.eps)
        keep = (d > 2 * p.eps + p.h) & (window.boundary_distance(pts) > 2 * p.h)
        pts = pts[keep]
    if len(pts):
        c = classify(prepare(oracle, window, p.eps), pts, p)
        pts = pts[c.count >= 2]
    cover = excess(pts, computed)
    return MedialComparison(sound, cover, int(len(pts)), tol)


# ---------------------------------------------------------------------------
# tangent cones


def dilatation_family(X: SetOracle, schedule, cone: SetOracle | None = None, eps: float = 1e-9) -> ParamFamily:
    """t -> (1/t) X.  The limit is ``cone`` when given, else the last member."""
    if float(X.exact_distance([(0.0, 0.0)])[0] if X.has_exact else _sample_distance_origin(X)) > eps:
        raise OriginMissing(f"{X.descriptor} does not contain the origin")
    sched = tuple(schedule)
    limit = cone if cone is not None else X.scaled(1.0 / sched[-1])
    return ParamFamily(lambda t: X.scaled(1.0 / t), sched, limit, f"dilatations of {X.descriptor}")


def _sample_distance_origin(X: SetOracle) -> float:
    w = Window.square(1.0, 1e-3)
    return float(distances([(0.0, 0.0)], X, w, 1e-4)[0])


@dataclass(frozen=True)
class ConeVerdict:
    verdict: str
    converged: bool
    excess: float
    eps_thm: float
    M_cone: PointSetEstimate
    L: PointSetEstimate
    convergence: ConvergenceReport

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "converged": self.converged,
                "excess_Mcone_liminf": tol_number(self.excess, self.eps_thm),
                "n_M_cone": len(self.M_cone), "n_liminf": len(self.L),
                "convergence": self.convergence.to_json()}


def tangent_cone_check(X: SetOracle, window: Window, cone: SetOracle | None = None,
                       schedule=None, params: Params | None = None) -> ConeVerdict:
    """Compare the medial axis of the tangent cone with the limit of dilated medial axes.

    The dilated medial axes are computed as medial axes of the dilated sets
    on the fixed window, which is the same set as (1/t) M_X restricted to it.
    """
    p = Params.for_h(window.h) if params is None else params
    sched = geometric_schedule(0.8, 20) if schedule is None else tuple(schedule)
    fam = dilatation_family(X, sched, cone)
    an = analyze_family(fam, window, p)
    M_cone = an.M0
    secs = an.nonempty
    if len(secs) >= p.tail_k:
        L = limits_of_estimates(window, [s.M for s in secs], p.eps_lim, [s.t for s in secs], p.tail_k).liminf_pts
    else:
        L = PointSetEstimate(np.empty((0, 2)), p.h, provenance="derived-limit")
    e = excess(M_cone, L)
    if not an.convergence.converged:
        v = "NOT-APPLICABLE"
    elif M_cone.empty:
        v = "VACUOUS-PASS"
    else:
        v = "PASS" if e <= p.eps_thm else "FAIL"
    return ConeVerdict(v, an.convergence.converged, e, p.eps_thm, M_cone, L, an.convergence)


def tangent_cone_examples() -> list[tuple[str, SetOracle, SetOracle, str]]:
    """(name, X, analytic cone, expected verdict) for the standard examples."""
    r2 = math.sqrt(2.0)
    two = of(Circle((1.0, 1.0), r2), Circle((1.0, -1.0), r2))
    pair = of(Line((0.0, 0.0), (1.0, 1.0)), Line((0.0, 0.0), (1.0, -1.0)))
    return [
        ("tent", TENT, TENT, "PASS"),
        ("two-circles", two, pair, "PASS"),
        ("circle", of(Circle((1.0, 0.0), 1.0)), Y_AXIS, "VACUOUS-PASS"),
    ]


__all__ = [
    "Scenario", "builtin_scenarios", "lookup", "evaluate", "compare_medial", "MedialComparison",
    "dilatation_family", "tangent_cone_check", "tangent_cone_examples", "ConeVerdict",
]
