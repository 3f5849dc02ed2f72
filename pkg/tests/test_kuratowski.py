import math

import numpy as np
import pytest

from medkura.errors import ScheduleTooShort
from medkura.kuratowski import (
    analyze_family,
    convergence_verdict,
    converges,
    distance_grid,
    excess,
    hausdorff,
    limits_from_grids,
    lower_limit,
    theorem_check,
    tol_number,
    upper_limit,
)
from medkura.medial import PointSetEstimate
from medkura.params import Params
from medkura.setrep import Line, ParamFamily, Window, circle, geometric_schedule, of, point


def test_excess_examples():
    assert excess([(0, 0)], [(1, 0), (3, 0)]) == 1.0
    assert excess([(1, 0), (3, 0)], [(0, 0)]) == 3.0
    assert excess([], [(0, 0)]) == 0.0
    assert excess([(0, 0)], []) == math.inf
    assert excess([], []) == 0.0
    assert hausdorff([(0, 0)], [(1, 0), (3, 0)]) == 3.0


def test_excess_accepts_estimates():
    A = PointSetEstimate([(0, 0), (0, 1)], 0.1)
    assert excess(A, PointSetEstimate([(0, 0)], 0.1)) == 1.0


def test_tol_number_encodes_infinity():
    assert tol_number(math.inf, 0.1) == {"value": "inf", "tol": 0.1}
    assert tol_number(0.5, 0.1) == {"value": 0.5, "tol": 0.1}


def test_constant_family_limits_equal_set():
    w = Window.square(1, 0.05)
    X = circle(0, 0, 0.5)
    fam = ParamFamily(lambda t: X, geometric_schedule(0.8, 8), X)
    lo, hi = lower_limit(fam, w), upper_limit(fam, w)
    np.testing.assert_array_equal(lo.points, hi.points)
    assert excess(lo, X.sample(w.box, 0.01)) <= 4 * w.h
    assert converges(fam, w).converged


def test_alternating_family_limits():
    # the section sits at y = +1 or y = -1 depending on the sign of t
    w = Window.square(2, 0.05)
    fam = ParamFamily(lambda t: of(Line((0, math.copysign(1, t)), (1, 0))),
                      geometric_schedule(0.8, 10, signed=True), of(Line((0, 1), (1, 0))))
    lo, hi = lower_limit(fam, w), upper_limit(fam, w)
    assert lo.empty
    ys = np.unique(np.round(hi.points[:, 1], 9))
    assert {-1.0, 1.0} <= set(ys)
    assert not converges(fam, w).converged


def test_lower_inside_upper_and_monotone_in_radius():
    w = Window.square(2, 0.05)
    fam = ParamFamily(lambda t: circle(0, 0, 1 + t), geometric_schedule(0.8, 12), circle(0, 0, 1))
    ts = fam.tail(5)
    grids = [distance_grid(fam.at(t), w) for t in ts]
    prev = None
    for r in (0.1, 0.2, 0.4):
        est = limits_from_grids(w, grids, r, ts)
        assert excess(est.liminf_pts, est.limsup_pts) == 0.0
        assert len(est.liminf_pts) <= len(est.limsup_pts)
        if prev is not None:
            assert excess(prev, est.liminf_pts) == 0.0
        prev = est.liminf_pts


def test_schedule_too_short():
    w = Window.square(1, 0.1)
    fam = ParamFamily(lambda t: point(t, 0), (0.5, 0.25), point(0, 0))
    with pytest.raises(ScheduleTooShort):
        lower_limit(fam, w, tail_k=5)


def test_convergence_verdict_rules():
    assert convergence_verdict([0.5, 0.1, 0.05, 0.04, 0.03, 0.02], 0.1, 5)
    assert not convergence_verdict([0.1, 0.05, 0.04], 0.1, 5)
    assert not convergence_verdict([0.01, 0.02, 0.05, 0.08, 0.09], 0.1, 5)
    assert convergence_verdict([0.01, 0.02, 0.05, 0.08, 0.09], 0.1, 5, floor=0.05)
    assert not convergence_verdict([0.01, 0.01, 0.01, 0.01, 0.2], 0.1, 5)


def test_convergence_shrinking_circles():
    w = Window.square(2, 0.05)
    fam = ParamFamily(lambda t: circle(0, 0, 1 + t), geometric_schedule(0.8, 20), circle(0, 0, 1))
    rep = converges(fam, w)
    assert rep.converged
    devs = [v for _, v in rep.sup_dev]
    assert devs[0] == pytest.approx(0.8, abs=0.02)
    assert devs[-1] == pytest.approx(0.8**20, abs=0.02)


def test_theorem_check_circles_pass():
    w = Window.square(2, 0.05)
    fam = ParamFamily(lambda t: circle(0, 0, 1 + t), geometric_schedule(0.8, 20), circle(0, 0, 1))
    v = theorem_check(fam, w)
    assert v.verdict == "PASS"
    assert v.excess_M0_L <= Params.for_h(w.h).eps_thm
    assert len(v.pi_M) == 20


def test_theorem_check_not_applicable_when_not_converging():
    w = Window.square(2, 0.05)
    fam = ParamFamily(lambda t: of(Line((0, math.copysign(1, t)), (1, 0))),
                      geometric_schedule(0.8, 10, signed=True), of(Line((0, 1), (1, 0))))
    v = theorem_check(fam, w)
    assert v.verdict == "NOT-APPLICABLE"
    assert v.hypothesis_failed


def test_theorem_check_vacuous_when_limit_has_no_medial_axis():
    w = Window.square(1, 0.05)
    fam = ParamFamily(lambda t: of(Line((0, t), (1, 0))), geometric_schedule(0.8, 20), of(Line((0, 0), (1, 0))))
    v = theorem_check(fam, w)
    assert v.verdict == "VACUOUS-PASS"
    assert v.M0.empty and v.L.empty


def test_analysis_sections_have_deviation():
    w = Window.square(2, 0.1)
    fam = ParamFamily(lambda t: circle(0, 0, 1 + t), geometric_schedule(0.8, 6), circle(0, 0, 1))
    an = analyze_family(fam, w)
    assert [s.t for s in an.sections] == list(fam.schedule)
    assert all(s.C is None for s in an.sections)
    row = an.sections[0].excess_row(an.M0, an.params)
    assert set(row) >= {"t"}
