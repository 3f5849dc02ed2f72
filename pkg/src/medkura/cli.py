"""Command-line runner: ``medkura run`` and ``medkura list``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import MedKuraError
from .kuratowski import analyze_family, theorem_check
from .params import Params
from .report import ScenarioRun, write_run
from .scenarios import builtin_scenarios, lookup
from .setrep import Window

FORMATS = ("json", "csv", "svg")
ENV_OUT = "MEDIAL_KURA_OUT"
DEFAULT_OUT = "medkura-out"


class UsageError(Exception):
    pass


def _window(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad window {text!r}") from exc
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("window needs x0,y0,x1,y1")
    return vals


def _formats(text: str) -> set[str]:
    fs = {f.strip() for f in text.split(",") if f.strip()}
    if not fs or not fs <= set(FORMATS):
        raise argparse.ArgumentTypeError(f"formats must be a nonempty subset of {','.join(FORMATS)}")
    return fs


def _positive(kind):
    def parse(text):
        v = kind(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{text} must be positive")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="medkura", description="Medial axes of converging set families.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run scenarios and write verdicts")
    run.add_argument("--scenario", default="all", help="scenario name or 'all'")
    run.add_argument("--window", type=_window, default=None, help="x0,y0,x1,y1 (overrides the catalog)")
    run.add_argument("--h", type=_positive(float), default=0.02, help="grid spacing")
    run.add_argument("--rho", type=float, default=0.8, help="geometric schedule ratio")
    run.add_argument("--steps", type=_positive(int), default=40, help="schedule length")
    run.add_argument("--signed", action="store_true", default=None, help="force an alternating-sign schedule")
    run.add_argument("--tail-k", type=_positive(int), default=5)
    run.add_argument("--eps-lim", type=_positive(float), default=None, help="limit radius (default 4h)")
    run.add_argument("--eps-d", type=_positive(float), default=None, help="distance slack (default h)")
    run.add_argument("--eta-sep", type=_positive(float), default=None, help="cluster separation (default 3h)")
    run.add_argument("--eps-conv", type=_positive(float), default=None, help="convergence threshold (default 2h)")
    run.add_argument("--out", type=Path, default=None, help=f"output directory (else ${ENV_OUT})")
    run.add_argument("--format", type=_formats, default=set(FORMATS), help="json,csv,svg")
    run.add_argument("--threads", type=_positive(int), default=1)
    run.add_argument("--no-central", action="store_true", help="skip central sets and the sandwich check")

    sub.add_parser("list", help="print the scenario catalog as JSON")
    return ap


def params_from(args, h: float) -> Params:
    over = {"tail_k": args.tail_k, "threads": args.threads}
    for key in ("eps_lim", "eps_d", "eta_sep", "eps_conv"):
        v = getattr(args, key)
        if v is not None:
            over[key] = v
    try:
        return Params.for_h(h, **over)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def run_scenario(sc, args) -> ScenarioRun:
    try:
        w = Window(*args.window, args.h) if args.window else sc.window.with_h(args.h)
        family = sc.family(args.rho, args.steps, args.signed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    p = params_from(args, args.h)
    an = analyze_family(family, w, p, with_central=not args.no_central)
    th = theorem_check(an)
    config = {
        "window": w.to_json(),
        "rho": args.rho,
        "steps": args.steps,
        "signed": bool(sc.signed if args.signed is None else args.signed),
        "schedule": list(family.schedule),
    }
    return ScenarioRun(sc, an, th, config)


def cmd_run(args) -> int:
    out = args.out or Path(os.environ.get(ENV_OUT) or DEFAULT_OUT)
    if args.scenario == "all":
        scs = builtin_scenarios()
    else:
        try:
            scs = [lookup(args.scenario)]
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
    mismatches = 0
    for sc in scs:
        run = run_scenario(sc, args)
        write_run(run, out, args.format)
        flag = "ok" if run.match else "MISMATCH"
        print(f"{sc.name:18s} {run.theorem.verdict:15s} expected {sc.expected_verdict:15s} {flag}")
        mismatches += not run.match
    return 1 if mismatches else 0


def cmd_list() -> int:
    print(json.dumps([s.to_json() for s in builtin_scenarios()], indent=2))
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list()
        return cmd_run(args)
    except UsageError as exc:
        print(f"medkura: error: {exc}", file=sys.stderr)
        return 2
    except MedKuraError as exc:
        print(f"medkura: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

