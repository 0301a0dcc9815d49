"""Aggregation and export of run results.

Latencies are kept in seconds internally; CSV exports add millisecond
columns to match how such results are usually tabulated. The summary
JSON stores exact seconds (plus derived ms for readability) so that
export followed by re-import reproduces the Summary bit for bit.
"""

from __future__ import annotations

import csv
import json
import platform
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .channel import watts_to_dbm
from .config import config_to_ini
from .engine import RunResult
from .mobility import write_trajectory_csv
from .traffic import write_samples_csv

SCHEMA_VERSION = 1

RECORDS_COLUMNS = [
    "interval",
    "solution",
    "traffic",
    "wireless_path1_ms",
    "wireless_path2_ms",
    "n3_path1_ms",
    "n3_path2_ms",
    "total_path1_ms",
    "total_path2_ms",
    "instant_ms",
    "deadline_met",
    "feasible",
    "objective_ms",
]
CDF_COLUMNS = ["solution", "traffic", "latency_ms", "cum_prob"]
SWEEP_COLUMNS = ["parameter", "value", "solution", "traffic", "mean_latency_ms", "deadline_miss_rate"]


@dataclass(frozen=True)
class TrafficSummary:
    mean_instant_latency_s: float
    cdf_latencies_s: tuple[float, ...]
    cdf_probs: tuple[float, ...]
    deadline_miss_rate: float


@dataclass(frozen=True)
class SolutionSummary:
    per_traffic: tuple[TrafficSummary, ...]
    mean_alpha_path1: tuple[float, ...] | None
    mean_p1_dbm: float | None
    mean_p2_dbm: float | None


@dataclass(frozen=True)
class Summary:
    solutions: dict[str, SolutionSummary]
    interval_count: int


def summarize(result: RunResult) -> Summary:
    """Mean latency, empirical CDF and deadline-miss rate per solution and traffic."""
    if not result.records or any(len(r) == 0 for r in result.records.values()):
        raise ValueError("cannot summarize an empty run")
    n_traffic = len(result.config.traffic_types)
    solutions: dict[str, SolutionSummary] = {}
    for name, records in result.records.items():
        per_traffic = []
        for i in range(n_traffic):
            lats = np.array([rec.instant_s[i] for rec in records])
            order = np.sort(lats)
            probs = np.arange(1, len(order) + 1) / len(order)
            misses = np.mean([not rec.deadline_met[i] for rec in records])
            per_traffic.append(
                TrafficSummary(
                    mean_instant_latency_s=float(lats.mean()),
                    cdf_latencies_s=tuple(float(x) for x in order),
                    cdf_probs=tuple(float(p) for p in probs),
                    deadline_miss_rate=float(misses),
                )
            )
        if name == "multi_path":
            mean_alpha = tuple(
                float(np.mean([rec.decision.alphas[i] for rec in records]))
                for i in range(n_traffic)
            )
            # averaged in watts, reported in dBm
            mean_p1 = watts_to_dbm(float(np.mean([rec.decision.p1_watts for rec in records])))
            mean_p2 = watts_to_dbm(float(np.mean([rec.decision.p2_watts for rec in records])))
        else:
            mean_alpha, mean_p1, mean_p2 = None, None, None
        solutions[name] = SolutionSummary(
            per_traffic=tuple(per_traffic),
            mean_alpha_path1=mean_alpha,
            mean_p1_dbm=mean_p1,
            mean_p2_dbm=mean_p2,
        )
    return Summary(solutions=solutions, interval_count=len(next(iter(result.records.values()))))


# --- file exports ----------------------------------------------------------

def _ms(seconds: float) -> float:
    return seconds * 1e3


def write_records_csv(result: RunResult, path: Path | str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORDS_COLUMNS)
        for name, records in result.records.items():
            for k, rec in enumerate(records):
                for i in range(len(rec.instant_s)):
                    writer.writerow(
                        [
                            k,
                            name,
                            i + 1,
                            _ms(rec.wireless_path1_s[i]),
                            _ms(rec.wireless_path2_s[i]),
                            _ms(rec.n3_path1_s[i]),
                            _ms(rec.n3_path2_s[i]),
                            _ms(rec.total_path1_s[i]),
                            _ms(rec.total_path2_s[i]),
                            _ms(rec.instant_s[i]),
                            str(rec.deadline_met[i]).lower(),
                            str(rec.feasible).lower(),
                            _ms(rec.objective_s),
                        ]
                    )


def decisions_columns(n_traffic: int) -> list[str]:
    cols = ["interval", "solution"]
    cols += [f"alpha_t{i}" for i in range(1, n_traffic + 1)]
    cols += ["p1_dbm", "p2_dbm", "p1_watts", "p2_watts", "objective_ms", "feasible"]
    return cols


def write_decisions_csv(result: RunResult, path: Path | str) -> None:
    n_traffic = len(result.config.traffic_types)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(decisions_columns(n_traffic))
        for name, records in result.records.items():
            for k, rec in enumerate(records):
                dec = rec.decision
                row: list = [k, name]
                row += [dec.alphas[i] for i in range(n_traffic)]
                row += [
                    watts_to_dbm(dec.p1_watts),
                    watts_to_dbm(dec.p2_watts),
                    dec.p1_watts,
                    dec.p2_watts,
                    _ms(rec.objective_s),
                    str(rec.feasible).lower(),
                ]
                writer.writerow(row)


def write_cdf_csv(summary: Summary, path: Path | str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CDF_COLUMNS)
        for name, sol in summary.solutions.items():
            for i, ts in enumerate(sol.per_traffic):
                for lat, prob in zip(ts.cdf_latencies_s, ts.cdf_probs):
                    writer.writerow([name, i + 1, _ms(lat), prob])


def summary_to_dict(summary: Summary) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "interval_count": summary.interval_count,
        "solutions": {
            name: {
                "mean_alpha_path1": list(sol.mean_alpha_path1) if sol.mean_alpha_path1 is not None else None,
                "mean_p1_dbm": sol.mean_p1_dbm,
                "mean_p2_dbm": sol.mean_p2_dbm,
                "per_traffic": [
                    {
                        "mean_instant_latency_s": ts.mean_instant_latency_s,
                        "mean_instant_latency_ms": _ms(ts.mean_instant_latency_s),
                        "deadline_miss_rate": ts.deadline_miss_rate,
                        "cdf_latencies_s": list(ts.cdf_latencies_s),
                        "cdf_probs": list(ts.cdf_probs),
                    }
                    for ts in sol.per_traffic
                ],
            }
            for name, sol in summary.solutions.items()
        },
    }


def summary_from_dict(data: dict) -> Summary:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported summary schema version {data.get('schema_version')!r}"
        )
    solutions = {}
    for name, sol in data["solutions"].items():
        per_traffic = tuple(
            TrafficSummary(
                mean_instant_latency_s=ts["mean_instant_latency_s"],
                cdf_latencies_s=tuple(ts["cdf_latencies_s"]),
                cdf_probs=tuple(ts["cdf_probs"]),
                deadline_miss_rate=ts["deadline_miss_rate"],
            )
            for ts in sol["per_traffic"]
        )
        solutions[name] = SolutionSummary(
            per_traffic=per_traffic,
            mean_alpha_path1=tuple(sol["mean_alpha_path1"]) if sol["mean_alpha_path1"] is not None else None,
            mean_p1_dbm=sol["mean_p1_dbm"],
            mean_p2_dbm=sol["mean_p2_dbm"],
        )
    return Summary(solutions=solutions, interval_count=data["interval_count"])


def write_summary_json(summary: Summary, path: Path | str) -> None:
    with open(path, "w") as fh:
        json.dump(summary_to_dict(summary), fh, indent=2)
        fh.write("\n")


def load_summary(path: Path | str) -> Summary:
    with open(path) as fh:
        return summary_from_dict(json.load(fh))


def write_manifest(result: RunResult, path: Path | str) -> None:
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "seed": result.seed,
        "wall_seconds": result.wall_seconds,
        "mpsplit_version": __version__,
        "python_version": platform.python_version(),
        "numpy_version": np.__version__,
        "config_ini": config_to_ini(result.config),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def export(summary: Summary, result: RunResult, out_dir: Path | str) -> list[Path]:
    """Write the full output layout for one run; returns the created files."""
    out = Path(out_dir)
    records_dir = out / "records"
    cdf_dir = out / "cdf"
    records_dir.mkdir(parents=True, exist_ok=True)
    cdf_dir.mkdir(parents=True, exist_ok=True)

    files = [
        out / "manifest.json",
        out / "summary.json",
        records_dir / "records.csv",
        records_dir / "decisions.csv",
        records_dir / "samples.csv",
        records_dir / "trajectory.csv",
        cdf_dir / "cdf.csv",
    ]
    write_manifest(result, files[0])
    write_summary_json(summary, files[1])
    write_records_csv(result, files[2])
    write_decisions_csv(result, files[3])
    write_samples_csv(result.samples, files[4])
    write_trajectory_csv(result.trajectory, result.config.bs_positions, files[5])
    write_cdf_csv(summary, files[6])
    return files


def write_sweep_csv(
    parameter: str, rows: list[tuple[float, Summary]], path: Path | str
) -> None:
    """One row per (value, solution, traffic)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for value, summary in rows:
            for name, sol in summary.solutions.items():
                for i, ts in enumerate(sol.per_traffic):
                    writer.writerow(
                        [
                            parameter,
                            value,
                            name,
                            i + 1,
                            _ms(ts.mean_instant_latency_s),
                            ts.deadline_miss_rate,
                        ]
                    )
