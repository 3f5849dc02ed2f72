"""Finite-schedule lower and upper limits, convergence and the main inclusion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import ScheduleTooShort
from .medial import PointSetEstimate, SandwichReport, central_set, classify_window, sandwich_check
from .params import Params
from .proximity import distances
from .setrep import ParamFamily, SetOracle, Window

VERDICTS = ("PASS", "VACUOUS-PASS", "NOT-APPLICABLE", "FAIL")


def tol_number(value: float, tol: float) -> dict:
    """JSON number with its tolerance; infinities become the string "inf"."""
    v = float(value)
    return {"value": v if math.isfinite(v) else "inf", "tol": float(tol)}


def _pts(A) -> np.ndarray:
    if isinstance(A, PointSetEstimate):
        return A.points
    return np.asarray(A, dtype=float).reshape(-1, 2)


def excess(A, B) -> float:
    """e(A, B) = sup_{a in A} dist(a, B); 0 for empty A, inf for empty B."""
    a, b = _pts(A), _pts(B)
    if len(a) == 0:
        return 0.0
    if len(b) == 0:
        return math.inf
    d, _ = cKDTree(b).query(a, k=1)
    return float(np.max(d))


def hausdorff(A, B) -> float:
    return max(excess(A, B), excess(B, A))


def distance_to(A, pts: np.ndarray) -> np.ndarray:
    """Distance from each query to a finite cloud (inf if the cloud is empty)."""
    a = _pts(A)
    if len(a) == 0:
        return np.full(len(pts), math.inf)
    return cKDTree(a).query(pts, k=1)[0]


def distance_grid(oracle: SetOracle, window: Window, eps: float | None = None) -> np.ndarray:
    return distances(window.nodes(), oracle, window, eps)


# ---------------------------------------------------------------------------
# limits


@dataclass(frozen=True)
class LimitEstimate:
    liminf_pts: PointSetEstimate
    limsup_pts: PointSetEstimate
    tail_k: int
    eps_lim: float
    schedule_used: tuple[float, ...]


def _check_tail(n: int, tail_k: int) -> None:
    if tail_k < 1:
        raise ValueError("tail_k must be positive")
    if n < tail_k:
        raise ScheduleTooShort(f"schedule has {n} entries, tail needs {tail_k}")


def limits_from_grids(window: Window, grids: Sequence[np.ndarray], eps_lim: float,
                      schedule: Sequence[float] = (), tail_k: int | None = None) -> LimitEstimate:
    """Lower/upper limit surrogates from per-parameter distance grids.

    ``grids`` are ordered like the schedule; the last ``tail_k`` are used.
    """
    k = len(grids) if tail_k is None else tail_k
    _check_tail(len(grids), k)
    nodes = window.nodes()
    tail = np.stack(list(grids)[-k:])
    lo = nodes[tail.max(axis=0) <= eps_lim]
    hi = nodes[tail.min(axis=0) <= eps_lim]
    sched = tuple(schedule)[-k:]
    mk = lambda p: PointSetEstimate(p, window.h, (0.0, 0.0), "derived-limit")  # noqa: E731
    return LimitEstimate(mk(lo), mk(hi), k, eps_lim, sched)


def limits_of_estimates(window: Window, estimates: Sequence[PointSetEstimate], eps_lim: float,
                        schedule: Sequence[float] = (), tail_k: int | None = None) -> LimitEstimate:
    """Limit surrogates of a family of finite estimates (such as t -> M_t)."""
    nodes = window.nodes()
    k = len(estimates) if tail_k is None else tail_k
    _check_tail(len(estimates), k)
    grids = [distance_to(e, nodes) for e in list(estimates)[-k:]]
    return limits_from_grids(window, grids, eps_lim, tuple(schedule)[-k:], k)


def _family_grids(family: ParamFamily, window: Window, tail_k: int, eps: float):
    _check_tail(len(family.schedule), tail_k)
    ts = family.tail(tail_k)
    return ts, [distance_grid(family.at(t), window, eps) for t in ts]


def lower_limit(family: ParamFamily, window: Window, tail_k: int = 5, eps_lim: float | None = None,
                eps: float | None = None) -> PointSetEstimate:
    """Nodes within ``eps_lim`` of every one of the last ``tail_k`` sections."""
    eps_lim = 4 * window.h if eps_lim is None else eps_lim
    ts, grids = _family_grids(family, window, tail_k, eps)
    return limits_from_grids(window, grids, eps_lim, ts, tail_k).liminf_pts


def upper_limit(family: ParamFamily, window: Window, tail_k: int = 5, eps_lim: float | None = None,
                eps: float | None = None) -> PointSetEstimate:
    """Nodes within ``eps_lim`` of at least one of the last ``tail_k`` sections."""
    eps_lim = 4 * window.h if eps_lim is None else eps_lim
    ts, grids = _family_grids(family, window, tail_k, eps)
    return limits_from_grids(window, grids, eps_lim, ts, tail_k).limsup_pts


# ---------------------------------------------------------------------------
# convergence


@dataclass(frozen=True)
class ConvergenceReport:
    sup_dev: tuple[tuple[float, float], ...]
    converged: bool
    eps_conv: float
    tail_k: int = 5

    def to_json(self) -> dict:
        return {
            "converged": self.converged,
            "eps_conv": self.eps_conv,
            "tail_k": self.tail_k,
            "sup_dev": [{"t": t, "dev": tol_number(v, self.eps_conv)} for t, v in self.sup_dev],
        }


def convergence_verdict(devs: Sequence[float], eps_conv: float, tail_k: int, floor: float = 0.0) -> bool:
    """Tail deviations under ``eps_conv`` and non-increasing up to 10% slack.

    ``floor`` is an additive slack for sampling noise in the deviations.
    """
    tail = list(devs)[-tail_k:]
    if len(tail) < tail_k:
        return False
    if any(v > eps_conv for v in tail):
        return False
    return all(b <= 1.1 * a + floor for a, b in zip(tail, tail[1:]))


def sup_deviation(grid_t: np.ndarray, grid_0: np.ndarray) -> float:
    return float(np.max(np.abs(grid_t - grid_0))) if len(grid_0) else 0.0


def converges(family: ParamFamily, window: Window, eps_conv: float | None = None, tail_k: int = 5,
              eps: float | None = None) -> ConvergenceReport:
    """Sup-norm deviation of d_t from d_0 on the window grid along the schedule."""
    eps = window.h / 4 if eps is None else eps
    eps_conv = 2 * window.h if eps_conv is None else eps_conv
    g0 = distance_grid(family.limit, window, eps)
    devs = [(t, sup_deviation(distance_grid(family.at(t), window, eps), g0)) for t in family.schedule]
    ok = convergence_verdict([v for _, v in devs], eps_conv, tail_k, 2 * eps)
    return ConvergenceReport(tuple(devs), ok, eps_conv, tail_k)


# ---------------------------------------------------------------------------
# per-family analysis and the main inclusion


@dataclass
class Section:
    """Everything computed for one parameter value."""

    t: float
    oracle: SetOracle
    M: PointSetEstimate
    sup_dev: float
    C: PointSetEstimate | None = None
    sandwich: SandwichReport | None = None
    samples: np.ndarray | None = None

    def excess_row(self, M0: PointSetEstimate, p: Params) -> dict:
        row = {"t": self.t, "n_M": len(self.M), "sup_dev": tol_number(self.sup_dev, p.eps_conv),
               "excess_M0_Mt": tol_number(excess(M0, self.M), p.eps_thm)}
        if self.sandwich is not None:
            row["sandwich"] = self.sandwich.to_json()
        return row


@dataclass
class FamilyAnalysis:
    family: ParamFamily
    window: Window
    params: Params
    sections: list[Section]
    M0: PointSetEstimate
    X0_samples: np.ndarray
    convergence: ConvergenceReport
    meta: dict = field(default_factory=dict)

    @property
    def nonempty(self) -> list[Section]:
        """Sections with a nonempty medial estimate, in schedule order."""
        return [s for s in self.sections if not s.M.empty]


def analyze_section(t: float, oracle: SetOracle, window: Window, p: Params, g0: np.ndarray,
                    with_central: bool = False) -> Section:
    g = classify_window(oracle, window, p)
    M = PointSetEstimate(g.medial_nodes, p.h, (p.eps_d, p.eta_sep))
    dev = sup_deviation(distances(g.nodes, oracle, window, p.eps), g0)
    sec = Section(t, oracle, M, dev, samples=g.sampled.points)
    if with_central:
        sec.C = central_set(oracle, window, params=p, grid=g)
        sec.sandwich = sandwich_check(M, sec.C, 2 * p.h)
    return sec


def analyze_family(family: ParamFamily, window: Window, params: Params | None = None,
                   with_central: bool = False) -> FamilyAnalysis:
    p = Params.for_h(window.h) if params is None else params
    g0c = classify_window(family.limit, window, p)
    M0 = PointSetEstimate(g0c.medial_nodes, p.h, (p.eps_d, p.eta_sep))
    g0 = distances(g0c.nodes, family.limit, window, p.eps)
    sections = [analyze_section(t, family.at(t), window, p, g0, with_central) for t in family.schedule]
    devs = [s.sup_dev for s in sections]
    conv = ConvergenceReport(tuple((s.t, s.sup_dev) for s in sections),
                             convergence_verdict(devs, p.eps_conv, p.tail_k, 2 * p.eps), p.eps_conv, p.tail_k)
    return FamilyAnalysis(family, window, p, sections, M0, g0c.sampled.points, conv)


@dataclass(frozen=True)
class TheoremVerdict:
    verdict: str
    converged: bool
    excess_M0_L: float
    eps_thm: float
    M0: PointSetEstimate
    L: PointSetEstimate
    limsup: PointSetEstimate
    pi_M: tuple[float, ...]
    tail_used: tuple[float, ...]
    notes: tuple[str, ...] = ()

    @property
    def hypothesis_failed(self) -> bool:
        return self.verdict == "NOT-APPLICABLE"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "converged": self.converged,
            "excess_M0_liminf": tol_number(self.excess_M0_L, self.eps_thm),
            "excess_limsup_M0": tol_number(excess(self.limsup, self.M0), self.eps_thm),
            "n_M0": len(self.M0),
            "n_liminf": len(self.L),
            "n_limsup": len(self.limsup),
            "pi_M": list(self.pi_M),
            "tail_used": list(self.tail_used),
            "notes": list(self.notes),
        }


def medial_limits(analysis: FamilyAnalysis, sections: Sequence[Section] | None = None) -> LimitEstimate | None:
    """Limits of t -> M_t over the parameters where M_t is nonempty.

    ``None`` when fewer than ``tail_k`` such parameters exist.
    """
    p = analysis.params
    secs = analysis.nonempty if sections is None else [s for s in sections if not s.M.empty]
    if len(secs) < p.tail_k:
        return None
    return limits_of_estimates(analysis.window, [s.M for s in secs], p.eps_lim,
                               [s.t for s in secs], p.tail_k)


def theorem_check(family: ParamFamily | FamilyAnalysis, window: Window | None = None,
                  params: Params | None = None) -> TheoremVerdict:
    """Check liminf M_t (over parameters with M_t nonempty) against M_0.

    Order of verdicts: no convergence gives NOT-APPLICABLE, an empty M_0
    gives VACUOUS-PASS, otherwise PASS iff e(M_0, L) <= eps_thm.
    """
    if isinstance(family, FamilyAnalysis):
        an = family
    else:
        an = analyze_family(family, window, params)
    p = an.params
    lim = medial_limits(an)
    empty = PointSetEstimate(np.empty((0, 2)), p.h, (0.0, 0.0), "derived-limit")
    L = lim.liminf_pts if lim else empty
    S = lim.limsup_pts if lim else empty
    pi_M = tuple(s.t for s in an.nonempty)
    notes = []
    if lim is None and pi_M:
        notes.append(f"only {len(pi_M)} parameters with nonempty M_t; lower limit taken as empty")
    e = excess(an.M0, L)
    if not an.convergence.converged:
        v = "NOT-APPLICABLE"
        notes.append("sections do not converge on the window; hypothesis fails")
    elif an.M0.empty:
        v = "VACUOUS-PASS"
    else:
        v = "PASS" if e <= p.eps_thm else "FAIL"
    return TheoremVerdict(v, an.convergence.converged, e, p.eps_thm, an.M0, L, S, pi_M,
                          lim.schedule_used if lim else (), tuple(notes))
