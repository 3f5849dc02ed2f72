import json
import math

import numpy as np
import pytest

from medkura.errors import OriginMissing
from medkura.medial import medial_axis
from medkura.params import Params
from medkura.scenarios import (
    TENT,
    builtin_scenarios,
    compare_medial,
    dilatation_family,
    evaluate,
    lookup,
    tangent_cone_check,
    tangent_cone_examples,
)
from medkura.setrep import Window, circle

VERDICTS = {"PASS", "FAIL", "VACUOUS-PASS", "NOT-APPLICABLE"}


def test_catalog_names_unique():
    names = [s.name for s in builtin_scenarios()]
    assert len(names) >= 11
    assert len(set(names)) == len(names)
    assert all(s.expected_verdict in VERDICTS for s in builtin_scenarios())


def test_lookup():
    assert lookup("hyperbola").name == "hyperbola"
    with pytest.raises(KeyError):
        lookup("no-such-family")


def test_catalog_json_serializable():
    text = json.dumps([s.to_json() for s in builtin_scenarios()], allow_nan=False)
    assert "parabola-shift" in text


def test_schedules():
    assert lookup("escaping-points").schedule(steps=4) == (1.0, 0.5, 1 / 3, 0.25)
    s = lookup("tent-family").schedule(0.5, 4)
    assert s == (0.5, -0.25, 0.125, -0.0625)
    assert all(t > 0 for t in lookup("circles").schedule(0.8, 10))


def test_parabola_shift_focal_ordinate():
    sc = lookup("parabola-shift")
    M = evaluate(sc.expected_Mt(0.5), sc.window)
    assert M.points[:, 1].min() == pytest.approx(-3.875, abs=1e-9)
    np.testing.assert_allclose(M.points[:, 0], 0.0)


def test_expected_medial_examples():
    w = Window.square(2, 0.05)
    assert evaluate(lookup("halfline-flip").expected_Mt(0.3), w).empty
    up = evaluate(lookup("tent-family").expected_Mt(0.3), w)
    down = evaluate(lookup("tent-family").expected_Mt(-0.3), w)
    assert up.points[:, 1].min() >= 0 and down.points[:, 1].max() <= 0
    bis = evaluate(lookup("plane-plus-line").expected_Mt(0.5), w)
    np.testing.assert_allclose(bis.points[:, 0], 0.25)
    esc = evaluate(lookup("escaping-points").expected_Mt(1.0), w)
    np.testing.assert_allclose(esc.points[:, 0], 0.5)


def _sections():
    for sc in builtin_scenarios():
        for t in ((0.5, -0.5) if sc.signed else (0.5,)):
            yield pytest.param(sc.name, t, id=f"{sc.name}[{t}]")


@pytest.mark.parametrize("name,t", list(_sections()))
def test_grid_medial_matches_closed_form(name, t):
    sc = lookup(name)
    w = sc.window.with_h(0.05)
    p = Params.for_h(w.h)
    X = sc.at(t)
    cmp = compare_medial(medial_axis(X, w, p), sc.expected_Mt(t), X, w, p)
    assert cmp.ok, cmp


def test_compare_medial_detects_wrong_answer():
    sc = lookup("hyperbola")
    w = sc.window.with_h(0.05)
    X = sc.at(0.5)
    wrong = medial_axis(circle(0.5, 1, 0.3), w)
    assert not compare_medial(wrong, sc.expected_Mt(0.5), X, w).ok


def test_dilatation_is_exact():
    fam = dilatation_family(TENT, (0.5, 0.25))
    q = np.random.default_rng(0).uniform(-2, 2, (50, 2))
    np.testing.assert_allclose(fam.at(0.25).exact_distance(q), TENT.exact_distance(q), atol=1e-12)
    c = circle(1, 0, 1)
    fam = dilatation_family(c, (0.5,))
    np.testing.assert_allclose(fam.at(0.5).exact_distance(q), 2 * c.exact_distance(q / 2), atol=1e-12)


def test_dilatation_requires_origin():
    with pytest.raises(OriginMissing):
        dilatation_family(circle(0, 0, 1), (0.5,))


@pytest.mark.slow
@pytest.mark.parametrize("name,X,cone,expected", tangent_cone_examples(), ids=lambda v: v if isinstance(v, str) else "")
def test_tangent_cone_examples(name, X, cone, expected):
    v = tangent_cone_check(X, Window.square(1, 0.05), cone)
    assert v.verdict == expected, v.to_json()
    assert math.isfinite(v.excess) or expected == "VACUOUS-PASS"
