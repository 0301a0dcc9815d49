"""Command-line entry point.

Subcommands: run, sweep, validate, replay, oracle-check. Exit codes:
0 success, 1 runtime failure, 2 usage error, 3 config error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__, engine, metrics
from .config import ConfigError, ExperimentConfig, load_config, scenario_preset, config_with_overrides
from .solver import InfeasibleIntervalError, oracle_gap
from .traffic import read_samples_csv

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3


def _add_config_source(parser: argparse.ArgumentParser) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", type=Path, help="path to a config file")
    src.add_argument("--preset", choices=("scenario1", "scenario2"), help="built-in scenario preset")
    parser.add_argument(
        "--bandwidth",
        type=float,
        default=None,
        help="total bandwidth in Hz (shorthand for --set radio.total_bandwidth_hz=...)",
    )
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override a config field, e.g. --set radio.shadowing_sigma_db=0",
    )
    parser.add_argument("--seed", type=int, default=None, help="override the RNG seed")


def _parse_overrides(pairs: list[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"override {pair!r}: expected SECTION.KEY=VALUE")
        overrides[key.strip()] = value.strip()
    return overrides


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    overrides = _parse_overrides(args.overrides)
    if args.bandwidth is not None:
        overrides["radio.total_bandwidth_hz"] = repr(args.bandwidth)
    if args.config is not None:
        cfg = load_config(args.config, overrides)
    else:
        cfg = scenario_preset(args.preset, args.bandwidth if args.bandwidth is not None else 100e6)
        if overrides:
            cfg = config_with_overrides(cfg, overrides)
    if args.seed is not None:
        cfg = replace(cfg, rng_seed=args.seed)
    return cfg


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    result = engine.run(cfg)
    summary = metrics.summarize(result)
    files = metrics.export(summary, result, args.out)
    for name, sol in summary.solutions.items():
        means = ", ".join(
            f"traffic {i + 1}: {ts.mean_instant_latency_s * 1e3:.4f} ms"
            for i, ts in enumerate(sol.per_traffic)
        )
        print(f"{name}: {means}")
    print(f"wrote {len(files)} files under {args.out}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    rows = engine.sweep(cfg, args.param, values)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sweep.csv"
    metrics.write_sweep_csv(args.param, rows, path)
    for value, summary in rows:
        means = ", ".join(
            f"{name}: {sol.per_traffic[0].mean_instant_latency_s * 1e3:.4f} ms"
            for name, sol in summary.solutions.items()
        )
        print(f"{args.param} = {value:g} -> {means}")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    n = cfg.interval_count()
    print(
        f"ok: {len(cfg.traffic_types)} traffic type(s), {n} intervals, "
        f"solutions: {', '.join(cfg.solutions)}"
    )
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    samples = read_samples_csv(args.samples, len(cfg.traffic_types))
    result = engine.run(cfg, samples=samples)
    summary = metrics.summarize(result)
    metrics.export(summary, result, args.out)
    print(f"replayed {len(samples)} intervals into {args.out}")
    return EXIT_OK


def _cmd_oracle_check(args: argparse.Namespace) -> int:
    from .config import SolverSettings

    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    settings = SolverSettings()
    worst = 0.0
    for _ in range(args.instances):
        gap = oracle_gap(rng, settings, power_points=args.power_points)
        worst = max(worst, gap)
    status = "PASS" if worst <= args.tolerance else "FAIL"
    print(
        f"{status}: max relative error {worst:.3e} over {args.instances} instances "
        f"(tolerance {args.tolerance:g})"
    )
    return EXIT_OK if status == "PASS" else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpsplit",
        description="Simulate and optimize uplink multi-path traffic splitting.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation and export its results")
    _add_config_source(p_run)
    p_run.add_argument("--out", type=Path, required=True, help="output directory")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    _add_config_source(p_sweep)
    p_sweep.add_argument("--param", choices=engine.SWEEP_PARAMETERS, required=True)
    p_sweep.add_argument("--values", required=True, help="comma-separated values, e.g. 10e6,50e6,100e6")
    p_sweep.add_argument("--out", type=Path, required=True, help="output directory")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="validate a config and exit")
    _add_config_source(p_val)
    p_val.set_defaults(func=_cmd_validate)

    p_replay = sub.add_parser("replay", help="re-run from a recorded sample trace")
    _add_config_source(p_replay)
    p_replay.add_argument("--samples", type=Path, required=True, help="samples.csv from a previous run")
    p_replay.add_argument("--out", type=Path, required=True, help="output directory")
    p_replay.set_defaults(func=_cmd_replay)

    p_oracle = sub.add_parser(
        "oracle-check", help="compare the solver against the dense-grid brute force"
    )
    p_oracle.add_argument("--instances", type=int, default=1000)
    p_oracle.add_argument("--power-points", type=int, default=10_000)
    p_oracle.add_argument("--tolerance", type=float, default=1e-3)
    p_oracle.add_argument("--seed", type=int, default=None)
    p_oracle.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleIntervalError as exc:
        print(f"infeasible interval: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
