"""Readers for the simulator's exported CSV files.

Every reader validates the header against the documented schema before
touching any data and raises SchemaError naming the file and the
mismatch. The plotting side never imports the simulator; these files are
the only interface.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

CDF_COLUMNS = ["solution", "traffic", "latency_ms", "cum_prob"]
SWEEP_COLUMNS = ["parameter", "value", "solution", "traffic", "mean_latency_ms", "deadline_miss_rate"]
DECISION_FIXED_PREFIX = ["interval", "solution"]
DECISION_FIXED_SUFFIX = ["p1_dbm", "p2_dbm", "p1_watts", "p2_watts", "objective_ms", "feasible"]

RATIO_SUM_TOLERANCE = 1e-12


class SchemaError(ValueError):
    """Input file does not match the documented schema."""


def _read_rows(path: Path | str, expected_header: list[str]) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected_header:
            raise SchemaError(
                f"{path}: header mismatch - expected {expected_header}, got {header}"
            )
        return [dict(zip(header, row)) for row in reader]


@dataclass(frozen=True)
class CdfCurves:
    """cum_prob over latency, keyed by (solution, traffic)."""

    curves: dict[tuple[str, int], tuple[list[float], list[float]]]

    def solutions(self) -> list[str]:
        return sorted({sol for sol, _ in self.curves})

    def traffics(self) -> list[int]:
        return sorted({t for _, t in self.curves})


def read_cdf(path: Path | str) -> CdfCurves:
    rows = _read_rows(path, CDF_COLUMNS)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    curves: dict[tuple[str, int], tuple[list[float], list[float]]] = {}
    for row in rows:
        key = (row["solution"], int(row["traffic"]))
        lats, probs = curves.setdefault(key, ([], []))
        lats.append(float(row["latency_ms"]))
        probs.append(float(row["cum_prob"]))
    for (sol, t), (lats, probs) in curves.items():
        if any(b < a for a, b in zip(lats, lats[1:])):
            raise SchemaError(f"{path}: latencies not sorted ascending for {sol}/traffic {t}")
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise SchemaError(f"{path}: cum_prob outside [0, 1] for {sol}/traffic {t}")
    return CdfCurves(curves=curves)


@dataclass(frozen=True)
class DecisionTrace:
    """Per-interval decisions of one solution."""

    intervals: list[int]
    alphas: dict[int, list[float]]  # traffic index (1-based) -> alpha series
    p1_dbm: list[float]
    p2_dbm: list[float]


def read_decisions(path: Path | str, solution: str = "multi_path") -> DecisionTrace:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path}: empty file")
        alpha_cols = [c for c in header if re.fullmatch(r"alpha_t\d+", c)]
        expected = DECISION_FIXED_PREFIX + alpha_cols + DECISION_FIXED_SUFFIX
        if header != expected or not alpha_cols:
            raise SchemaError(
                f"{path}: header mismatch - expected interval, solution, alpha_t1..N, "
                f"p1_dbm, p2_dbm, p1_watts, p2_watts, objective_ms, feasible; got {header}"
            )
        rows = [dict(zip(header, row)) for row in reader]

    rows = [r for r in rows if r["solution"] == solution]
    if not rows:
        raise SchemaError(f"{path}: no rows for solution {solution!r}")
    rows.sort(key=lambda r: int(r["interval"]))
    trace = DecisionTrace(
        intervals=[int(r["interval"]) for r in rows],
        alphas={
            int(c.removeprefix("alpha_t")): [float(r[c]) for r in rows] for c in alpha_cols
        },
        p1_dbm=[float(r["p1_dbm"]) for r in rows],
        p2_dbm=[float(r["p2_dbm"]) for r in rows],
    )
    for t, series in trace.alphas.items():
        for a in series:
            if not 0.0 <= a <= 1.0:
                raise SchemaError(f"{path}: alpha_t{t} value {a} outside [0, 1]")
            if abs(a + (1.0 - a) - 1.0) > RATIO_SUM_TOLERANCE:
                raise SchemaError(f"{path}: alpha_t{t} path ratios do not sum to 1")
    return trace


@dataclass(frozen=True)
class SweepTable:
    parameter: str
    # (solution, traffic) -> (values, mean_latency_ms)
    lines: dict[tuple[str, int], tuple[list[float], list[float]]]


def read_sweep(path: Path | str) -> SweepTable:
    rows = _read_rows(path, SWEEP_COLUMNS)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    parameters = {row["parameter"] for row in rows}
    if len(parameters) != 1:
        raise SchemaError(f"{path}: expected a single swept parameter, got {sorted(parameters)}")
    lines: dict[tuple[str, int], tuple[list[float], list[float]]] = {}
    for row in sorted(rows, key=lambda r: float(r["value"])):
        key = (row["solution"], int(row["traffic"]))
        xs, ys = lines.setdefault(key, ([], []))
        xs.append(float(row["value"]))
        ys.append(float(row["mean_latency_ms"]))
    return SweepTable(parameter=parameters.pop(), lines=lines)
