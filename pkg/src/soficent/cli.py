"""Command-line front end.

Exit codes: 0 success, 1 acceptance failure, 2 a computational cap was hit,
3 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from pathlib import Path

from . import __version__
from .acceptance import UnknownSuite, run_suite, summary_json
from .amenable import cross_check_sofic_amenable, h_a_tail, h_a_topological
from .config import ExperimentConfig, parse_cover, parse_measure
from .estimators import (bowen_measure_entropy, classify, default_cover_family, h_cover,
                         h_measure_cover, h_space_conditional, h_star, h_topological, symbolic)
from .measures import single_site_indicators
from .microstates import CapExceeded, dump_lines, enumerate_microstates
from .registry import ConfigError
from .reports import dumps, write_reports

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_CONFIG = 0, 1, 2, 3


def compute(config: ExperimentConfig) -> dict:
    """Evaluate ``config.quantity`` and return the report as a JSON-ready dict."""
    sys = config.load_system()
    sym = symbolic(sys)
    q = config.quantity
    if q in ("h_a_topological", "h_a_tail"):
        family = default_cover_family(sys, config.family_radius)
        if q == "h_a_topological":
            est = h_a_topological(sys, [parse_cover(sym, config.cover)], config.folner)
        else:
            est = h_a_tail(sys, family, family, config.folner)
        return {**est.to_json(), "config": config.to_dict()}
    sched = config.schedule(sys)
    cover = parse_cover(sym, config.cover)
    family = default_cover_family(sys, config.family_radius)
    if q == "h_topological":
        rep = h_topological(sys, sched)
    elif q == "h_cover":
        rep = h_cover(sys, cover, sched)
    elif q == "h_space_conditional":
        rep = h_space_conditional(sys, cover, family, sched)
    elif q == "h_star":
        rep = h_star(sys, family, family, sched)
    elif q == "h_measure_cover":
        mu = parse_measure(sym, config.measure)
        rep = h_measure_cover(sys, mu, cover, [single_site_indicators(sym)], sched)
    else:
        mu = parse_measure(sym, config.measure)
        rep = bowen_measure_entropy(sys, mu, cover, sched)
    return {**rep.to_json(), "config": config.to_dict()}


def run(config: ExperimentConfig, outdir) -> tuple[int, dict | None]:
    """Compute, write report.json and cells.csv, and return ``(exit code, report)``."""
    try:
        report = compute(config)
    except CapExceeded as exc:
        _sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP, None
    except (ConfigError, ValueError) as exc:
        _sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG, None
    write_reports(report, outdir)
    return EXIT_OK, report


def _floats(text: str) -> tuple:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _ints(text: str) -> tuple:
    return tuple(int(t) for t in text.split(",") if t.strip())


def _add_system(p):
    p.add_argument("--system", default=None, help="built-in name (full-shift-k, golden-mean, "
                   "fixed-point, odometer-2adic; suffix @Z2 or @Z/m) or a JSON system file")
    p.add_argument("--depth", type=int, default=None, help="odometer truncation depth")


def _add_schedule(p):
    p.add_argument("--config", help="JSON experiment config; flags override its fields")
    p.add_argument("--d", type=_ints, help="comma-separated approximation sizes")
    p.add_argument("--F-radii", dest="F_radii", type=_ints)
    p.add_argument("--delta", type=_floats)
    p.add_argument("--eps", type=_floats)
    p.add_argument("--R", type=int)
    p.add_argument("--folner", type=_ints, help="Følner box indices")
    p.add_argument("--cover", help="standard, trivial or window-rN")
    p.add_argument("--family-radius", dest="family_radius", type=int)
    p.add_argument("--measure", help="bernoulli:p[,p...] or parry")
    p.add_argument("--enum-cap", dest="enum_cap", type=int)
    p.add_argument("--vertex-cap", dest="vertex_cap", type=int)
    p.add_argument("--node-cap", dest="node_cap", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--out", default=".", help="directory for report.json and cells.csv")


FIELDS = ("system", "depth", "quantity", "d", "F_radii", "delta", "eps", "R", "folner", "cover",
          "family_radius", "measure", "enum_cap", "vertex_cap", "node_cap", "samples", "seed",
          "tolerance")


def config_from_args(args, **fixed) -> ExperimentConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    for f in FIELDS:
        v = getattr(args, f, None)
        if v is not None:
            data[f] = v
    data.update(fixed)
    return ExperimentConfig.from_dict(data)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="soficent", description="Sofic and amenable entropy estimates "
                                 "with certified brackets for shift systems.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate one entropy quantity")
    _add_system(p)
    p.add_argument("--quantity")
    _add_schedule(p)

    p = sub.add_parser("classify", help="expansiveness and h-expansiveness evidence")
    _add_system(p)
    _add_schedule(p)

    p = sub.add_parser("compare", help="sofic vs amenable cross-check")
    _add_system(p)
    _add_schedule(p)
    p.add_argument("--no-tail", action="store_true", help="skip the tail-entropy comparison")

    p = sub.add_parser("acceptance", help="run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion keys, numbers or property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write acceptance.json here")

    p = sub.add_parser("dump-microstates", help="list microstates, one per line")
    _add_system(p)
    _add_schedule(p)
    p.add_argument("--which", choices=("in", "unknown", "all"), default="in")
    p.add_argument("--dump", help="write to this file instead of stdout")
    return ap


def _classify(config: ExperimentConfig) -> dict:
    sys = config.load_system()
    sched = config.schedule(sys)
    family = default_cover_family(sys, config.family_radius)
    return {"system": getattr(sys, "name", ""), **classify(sys, sched, family).to_json(),
            "config": config.to_dict(), "cells": []}


def _compare(config: ExperimentConfig, tail: bool) -> dict:
    sys = config.load_system()
    sched = config.schedule(sys)
    family = default_cover_family(sys, config.family_radius)
    return {**cross_check_sofic_amenable(sys, sched, config.folner, family, tail=tail),
            "config": config.to_dict(), "cells": []}


def _dump(config: ExperimentConfig, which: str) -> list[str]:
    sys = config.load_system()
    sym = symbolic(sys)
    sched = config.schedule(sys)
    lines = []
    for sigma in sched.sigmas:
        ms = enumerate_microstates(sym, sigma, sched.F_list[-1], sched.delta_list[-1], sched.R,
                                   cap=sched.enum_cap, node_cap=sched.node_cap)
        arr = {"in": ms.certified_in, "unknown": ms.unknown, "all": ms.optimistic}[which]
        lines += dump_lines(sym, arr)
    return lines


def _guard(fn):
    try:
        return EXIT_OK, fn()
    except CapExceeded as exc:
        _sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP, None
    except (ConfigError, ValueError) as exc:
        _sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG, None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "acceptance":
        only = [t for t in args.only.split(",") if t.strip()] if args.only else None
        try:
            results = run_suite(only, seed=args.seed)
        except UnknownSuite as exc:
            _sys.stderr.write(f"unknown suite {exc}\n")
            return EXIT_CONFIG
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / "acceptance.json").write_text(summary_json(results))
        failed = [r for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        return EXIT_FAIL if failed else EXIT_OK

    code, config = _guard(lambda: config_from_args(
        args, **({"quantity": args.quantity} if args.command == "estimate" and args.quantity else {})))
    if code:
        return code
    if args.command == "estimate":
        code, report = run(config, args.out)
        if report is not None:
            print(dumps({k: report[k] for k in ("quantity", "system", "headline") if k in report}), end="")
        return code
    if args.command == "dump-microstates":
        code, lines = _guard(lambda: _dump(config, args.which))
        if code:
            return code
        text = "".join(line + "\n" for line in lines)
        if args.dump:
            Path(args.dump).write_text(text)
        else:
            _sys.stdout.write(text)
        return EXIT_OK
    work = (lambda: _classify(config)) if args.command == "classify" else \
        (lambda: _compare(config, not args.no_tail))
    code, report = _guard(work)
    if code:
        return code
    write_reports(report, args.out)
    print(dumps({k: v for k, v in report.items() if k not in ("config", "cells")}), end="")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
