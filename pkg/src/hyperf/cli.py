"""Batch runner: ``hyperf run | sweep | mphi | multiplier-bound``.

Exit status: 0 when every hard check passes, 1 on a hard failure, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .config import (SUITES, ConfigError, ExperimentConfig, config_from_dict, load_config,
                     parse_number)
from .inequalities import TruncationOverflowError
from .multipliers import MultiplierSymbol, check_hormander_bound, opnorm_lower_bound
from .spectra import WeightFunction, mphi, mphi_argmax
from .suites import RUNNERS, fraction_str, make_instance, prepare

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
SWEEP_PARAMS = ("p", "level", "a", "seed", "count", "decay", "kind")


def to_jsonable(obj):
    """Plain JSON tree: rationals as ``"num/den"``, non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else ("nan" if math.isnan(x) else
                                           ("inf" if x > 0 else "-inf"))
    if isinstance(obj, complex):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    return obj


def dumps(doc) -> str:
    # float repr is the shortest round-trip decimal (at most 17 significant digits)
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2, allow_nan=False) + "\n"


def thread_cap() -> int:
    raw = os.environ.get("HYPERF_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"HYPERF_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError(f"HYPERF_THREADS must be a positive integer, got {raw!r}")
    return n


def run(cfg: ExperimentConfig) -> dict:
    """Execute every requested suite; returns the report document."""
    cfg.validate()
    inst, fam = prepare(cfg)
    suites = sorted(set(cfg.suites))

    def one(name):
        t0 = time.perf_counter()
        res = RUNNERS[name](cfg, inst, fam)
        res.seconds = time.perf_counter() - t0
        return res

    workers = max(1, min(len(suites), thread_cap()))
    if workers == 1:
        results = [one(s) for s in suites]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, suites))
    body = {r.name: r.to_dict(cfg.timings) for r in results}
    return {
        "config": cfg.to_dict(),
        "instance": inst.describe(),
        "suites": body,
        "summary": {"passed": all(r.passed for r in results),
                    "suites": {r.name: r.passed for r in results},
                    "warnings": sum(len(r.warnings) for r in results)},
    }


def report_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "params", "sup_ratio", "pass"])
    for name, suite in sorted(doc["suites"].items()):
        for rec in suite["records"]:
            params = ";".join(f"{k}={to_jsonable(v)}" for k, v in sorted(rec["params"].items()))
            r = rec.get("sup_ratio")
            w.writerow([name, params, "" if r is None else repr(to_jsonable(r)),
                        all(rec["checks"].values())])
    return buf.getvalue()


def _with_param(cfg: ExperimentConfig, name: str, value) -> ExperimentConfig:
    c = copy.deepcopy(cfg)
    if name == "p":
        c.p_grid = [value]
    elif name == "level":
        c.level = int(value)
    elif name == "a":
        c.a = str(value)
    elif name == "seed":
        c.seed = int(value)
    elif name in ("count", "decay", "kind"):
        setattr(c.family, name, {"count": int, "decay": float, "kind": str}[name](value))
    else:
        raise ConfigError(f"cannot sweep {name!r}; choose from {SWEEP_PARAMS}")
    return c.validate()


def sweep(cfg: ExperimentConfig, parameter: str, values) -> tuple[list[dict], str]:
    """One report per value plus a CSV table ``parameter,value,suite,sup_ratio,pass``."""
    configs = [_with_param(cfg, parameter, v) for v in values]
    reports = [run(c) for c in configs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["parameter", "value", "suite", "sup_ratio", "pass"])
    for v, rep in zip(values, reports):
        for name, suite in sorted(rep["suites"].items()):
            r = suite["sup_ratio"]
            w.writerow([parameter, v, name, "" if r is None else repr(to_jsonable(r)),
                        suite["passed"]])
    return reports, buf.getvalue()


def _split(values):
    out = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return out


def _config_from_args(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else config_from_dict({})
    if args.instance:
        cfg.instance = args.instance
    if args.a:
        cfg.a = args.a
    if args.suite:
        cfg.suites = _split(args.suite)
    if args.p:
        cfg.p_grid = _split(args.p)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.level is not None:
        cfg.level = args.level
    if args.out:
        cfg.output.path = args.out
    if getattr(args, "format", None):
        cfg.output.format = args.format
    if getattr(args, "timings", False):
        cfg.timings = True
    return cfg.validate()


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_status(doc):
    for name, suite in sorted(doc["suites"].items()):
        for w in suite["warnings"]:
            print(f"warning [{name}] {w}", file=sys.stderr)
        for f in suite["hard_failures"]:
            print(f"FAILED [{name}] {f}", file=sys.stderr)


def cmd_run(args) -> int:
    cfg = _config_from_args(args)
    doc = run(cfg)
    _emit(dumps(doc) if cfg.output.format == "json" else report_csv(doc), cfg.output.path)
    _print_status(doc)
    return EXIT_OK if doc["summary"]["passed"] else EXIT_FAIL


def cmd_sweep(args) -> int:
    cfg = _config_from_args(args)
    values = _split(args.values)
    if not values:
        raise ConfigError("sweep needs at least one value")
    reports, table = sweep(cfg, args.param, values)
    _emit(table, cfg.output.path)
    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        for i, rep in enumerate(reports):
            with open(os.path.join(args.report_dir, f"report_{i:03d}.json"), "w") as fh:
                fh.write(dumps(rep))
    for rep in reports:
        _print_status(rep)
    return EXIT_OK if all(r["summary"]["passed"] for r in reports) else EXIT_FAIL


def _instance_from_args(args):
    cfg = ExperimentConfig(instance=args.instance, a=args.a, level=args.level)
    cfg.validate()
    return make_instance(cfg)


def weight_preset(inst, level: int, preset: str) -> WeightFunction:
    """``hl`` or ``hl:<beta>`` gives ``mu^-beta``; ``kpow:<s>`` gives ``k^-s``."""
    name, _, arg = preset.partition(":")
    if name == "hl":
        return WeightFunction.hl_preset(inst, level, parse_number(arg) if arg else None)
    if name == "kpow" and arg:
        return WeightFunction(np.exp(-parse_number(arg) * inst.log_hyperdims(level)),
                              inst.hyperdims(level))
    raise ConfigError(f"unknown weight preset {preset!r} (use hl, hl:<beta>, kpow:<s>)")


def cmd_mphi(args) -> int:
    inst = _instance_from_args(args)
    phi = weight_preset(inst, args.level, args.preset)
    doc = {"instance": inst.describe(), "preset": args.preset, "level": args.level,
           "M_phi": mphi(phi), "argmax_label": mphi_argmax(phi)}
    sys.stdout.write(dumps(doc))
    return EXIT_OK


def symbol_preset(inst, level: int, spec: str) -> MultiplierSymbol:
    """``riesz:<gamma>``, ``random:<seed>`` or ``indicator:<label>``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "riesz":
            return MultiplierSymbol.riesz(inst, level, parse_number(arg))
        if name == "random":
            return MultiplierSymbol.random(inst, level, int(arg or 0))
        if name == "indicator":
            return MultiplierSymbol.indicator(inst, level, int(arg))
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad symbol {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown symbol {spec!r} (use riesz:<g>, random:<seed>, indicator:<n>)")


def cmd_multiplier_bound(args) -> int:
    inst = _instance_from_args(args)
    sigma = symbol_preset(inst, args.level, args.symbol)
    p, q = parse_number(args.p), parse_number(args.q)
    try:
        est = opnorm_lower_bound(sigma, p, q, trials=args.trials, seed=args.seed)
        out = check_hormander_bound(sigma, p, q, est)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    doc = {"instance": inst.describe(), "symbol": args.symbol, "level": args.level,
           "p": p, "q": q, "functional": out["functional"], "ratio": out["ratio"],
           "estimate": est.to_dict()}
    if "sharp" in out:
        doc["sharp"] = out["sharp"]
    sys.stdout.write(dumps(doc))
    return EXIT_FAIL if out.get("sharp") is False else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperf", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def experiment_flags(sp):
        sp.add_argument("--config", help="JSON experiment config")
        sp.add_argument("--instance", choices=["conj_su2", "dunkl_ramirez"])
        sp.add_argument("--a", help="H_a parameter as num/den")
        sp.add_argument("--suite", action="append",
                        help=f"suite name(s), comma separated; from {', '.join(SUITES)}")
        sp.add_argument("--p", action="append", help="p grid, comma separated (num/den ok)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--level", type=int)
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--timings", action="store_true",
                        help="include wall-clock seconds per suite (breaks byte determinism)")

    r = sub.add_parser("run", help="run the configured suites")
    experiment_flags(r)
    r.add_argument("--format", choices=["json", "csv"])
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="repeat run over one parameter; CSV table")
    experiment_flags(s)
    s.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    s.add_argument("--values", action="append", required=True)
    s.add_argument("--report-dir", help="also write one JSON report per value here")
    s.set_defaults(func=cmd_sweep)

    def instance_flags(sp):
        sp.add_argument("--instance", default="conj_su2", choices=["conj_su2", "dunkl_ramirez"])
        sp.add_argument("--a", default="1/3")
        sp.add_argument("--level", type=int, default=40)

    m = sub.add_parser("mphi", help="print M_phi for a weight preset")
    instance_flags(m)
    m.add_argument("--preset", default="hl")
    m.set_defaults(func=cmd_mphi)

    b = sub.add_parser("multiplier-bound", help="print the functional and a norm estimate")
    instance_flags(b)
    b.add_argument("--symbol", default="random:0")
    b.add_argument("--p", default="2")
    b.add_argument("--q", default="2")
    b.add_argument("--trials", type=int, default=4)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_multiplier_bound)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except TruncationOverflowError as exc:
        print(f"error: {exc} (suggested cap: level {exc.suggested_level})", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
