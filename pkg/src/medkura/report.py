"""Serialization of scenario runs: verdict JSON, per-section CSV and an SVG overview."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kuratowski import FamilyAnalysis, TheoremVerdict, excess, medial_limits, tol_number
from .medial import PointSetEstimate, thin
from .scenarios import Scenario

CSV_HEADER = "set,t,x,y\n"
SET_NAMES = ("X", "M", "C", "M0", "LIMINF", "LIMSUP")


def fmt(v: float) -> str:
    """Locale independent, 9 significant digits."""
    s = "%.9g" % v
    return "0" if s == "-0" else s


@dataclass
class ScenarioRun:
    scenario: Scenario
    analysis: FamilyAnalysis
    theorem: TheoremVerdict
    config: dict

    @property
    def match(self) -> bool:
        return self.theorem.verdict == self.scenario.expected_verdict


def verdict_document(run: ScenarioRun) -> dict:
    an, th, p = run.analysis, run.theorem, run.analysis.params
    tol_sw = 2 * p.h
    sw = [s.sandwich for s in an.sections if s.sandwich is not None]
    lim = medial_limits(an)
    doc = {
        "scenario": run.scenario.name,
        "anchor": run.scenario.anchor,
        "expected_verdict": run.scenario.expected_verdict,
        "verdict": th.verdict,
        "match": run.match,
        "config": run.config,
        "params": p.to_json(),
        "theorem": th.to_json(),
        "convergence": an.convergence.to_json(),
        "sandwich": {
            "ok": all(s.ok for s in sw),
            "checked": len(sw),
            "tol": tol_sw,
            "worst_M_C": tol_number(max((s.excess_m_in_c for s in sw), default=0.0), tol_sw),
            "worst_C_M": tol_number(max((s.excess_c_in_m for s in sw), default=0.0), tol_sw),
        },
        "limits": {
            "tail_used": list(lim.schedule_used) if lim else [],
            "excess_M0_liminf": tol_number(excess(an.M0, th.L), p.eps_thm),
            "excess_limsup_M0": tol_number(excess(th.limsup, an.M0), p.eps_thm),
        },
        "sections": [s.excess_row(an.M0, p) for s in an.sections],
        "notes": run.scenario.notes,
    }
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _rows(out: io.StringIO, name: str, t: float, pts: np.ndarray) -> None:
    ts = fmt(t)
    for x, y in pts:
        out.write(f"{name},{ts},{fmt(x)},{fmt(y)}\n")


def section_csv(run: ScenarioRun, index: int) -> str:
    """CSV for section ``index``; index 0 is the limit t = 0."""
    an = run.analysis
    w, h = an.window, an.params.h
    out = io.StringIO()
    out.write(CSV_HEADER)
    if index == 0:
        X = an.X0_samples[w.contains(an.X0_samples)]
        _rows(out, "X", 0.0, thin(X, h / 2))
        _rows(out, "M0", 0.0, an.M0.points)
        _rows(out, "LIMINF", 0.0, run.theorem.L.points)
        _rows(out, "LIMSUP", 0.0, run.theorem.limsup.points)
        return out.getvalue()
    s = an.sections[index - 1]
    X = s.samples[w.contains(s.samples)] if s.samples is not None else np.empty((0, 2))
    _rows(out, "X", s.t, thin(X, h / 2))
    _rows(out, "M", s.t, s.M.points)
    if s.C is not None:
        _rows(out, "C", s.t, s.C.points)
    return out.getvalue()


# ---------------------------------------------------------------------------
# svg


def _svg_points(pts: np.ndarray, tx, ty, r: float, fill: str, opacity: float = 1.0) -> str:
    parts = [f'<g fill="{fill}" fill-opacity="{opacity:g}">']
    for x, y in pts:
        parts.append(f'<circle cx="{tx(x):.2f}" cy="{ty(y):.2f}" r="{r:g}"/>')
    parts.append("</g>")
    return "\n".join(parts)


def overview_svg(run: ScenarioRun, size: int = 480, max_sections: int = 8) -> str:
    an = run.analysis
    w = an.window
    sx = size / (w.xmax - w.xmin)
    sy = size / (w.ymax - w.ymin)
    s = min(sx, sy)
    width, height = (w.xmax - w.xmin) * s, (w.ymax - w.ymin) * s

    def tx(x):
        return (x - w.xmin) * s

    def ty(y):
        return (w.ymax - y) * s

    cell = max(w.h, 2.0 / s)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f"<title>{run.scenario.name}: {run.theorem.verdict}</title>",
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}" fill="white" stroke="black"/>',
    ]
    secs = an.sections
    step = max(1, len(secs) // max_sections)
    picked = secs[::step][:max_sections]
    for k, sec in enumerate(picked):
        grey = int(200 - 150 * k / max(1, len(picked) - 1))
        X = sec.samples[w.contains(sec.samples)] if sec.samples is not None else np.empty((0, 2))
        parts.append(_svg_points(thin(X, cell), tx, ty, 0.8, f"rgb({grey},{grey},{grey})"))
    X0 = an.X0_samples[w.contains(an.X0_samples)]
    parts.append(_svg_points(thin(X0, cell), tx, ty, 1.0, "black"))
    for sec in secs[-min(len(secs), 5):]:
        parts.append(_svg_points(thin(sec.M.points, cell), tx, ty, 1.0, "steelblue", 0.6))
    parts.append(_svg_points(thin(run.theorem.limsup.points, cell), tx, ty, 1.6, "orange", 0.25))
    parts.append(_svg_points(thin(run.theorem.L.points, cell), tx, ty, 1.6, "green", 0.4))
    parts.append(_svg_points(thin(an.M0.points, cell), tx, ty, 1.2, "crimson"))
    parts.append(
        f'<text x="4" y="14" font-family="monospace" font-size="11">{run.scenario.name} '
        f"{run.theorem.verdict} (expected {run.scenario.expected_verdict})</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_run(run: ScenarioRun, root: Path, formats: set[str]) -> list[Path]:
    d = Path(root) / run.scenario.name
    d.mkdir(parents=True, exist_ok=True)
    written = []
    if "json" in formats:
        p = d / "verdict.json"
        p.write_text(dumps(verdict_document(run)), encoding="utf-8")
        written.append(p)
    if "csv" in formats:
        for i in range(len(run.analysis.sections) + 1):
            p = d / f"sets_t{i}.csv"
            p.write_text(section_csv(run, i), encoding="utf-8")
            written.append(p)
    if "svg" in formats:
        p = d / "overview.svg"
        p.write_text(overview_svg(run), encoding="utf-8")
        written.append(p)
    return written


def estimate_json(est: PointSetEstimate) -> dict:
    return {"points": est.points.tolist(), "spacing": est.spacing,
            "tolerances": list(est.tolerances), "provenance": est.provenance}
