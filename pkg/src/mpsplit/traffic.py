"""Per-interval random draws: arrivals, UE queue backlog and N3 flow rates.

Arrival and queue counts are Poisson; the guaranteed bit rate of each
flow is redrawn uniformly inside its configured support every interval
(it models the fluctuating transport load of other users).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class IntervalSample:
    """All random draws consumed by one interval, for every traffic type.

    One sample is drawn per interval and shared by every solution under
    comparison (common random numbers).
    """

    arrivals: tuple[int, ...]
    queued: tuple[int, ...]
    gbr_path1_bps: tuple[float, ...]
    gbr_path2_bps: tuple[float, ...]
    ue_position: tuple[float, float]
    shadowing_db: tuple[float, float]


def sample_arrivals(mean_rate_pps: float, dt_s: float, rng: np.random.Generator) -> int:
    """Poisson packet-arrival count over one interval of length dt_s."""
    if mean_rate_pps < 0.0:
        raise ValueError(f"arrival rate must be >= 0, got {mean_rate_pps}")
    if dt_s <= 0.0:
        raise ValueError(f"interval duration must be > 0, got {dt_s}")
    return int(rng.poisson(mean_rate_pps * dt_s))


def sample_queue(mean_pkts: float, rng: np.random.Generator) -> int:
    """Poisson count of packets already queued at the UE."""
    if mean_pkts < 0.0:
        raise ValueError(f"queue mean must be >= 0, got {mean_pkts}")
    return int(rng.poisson(mean_pkts))


def sample_gbr(range_bps: tuple[float, float], rng: np.random.Generator) -> float:
    """Uniform GBR draw from [lo, hi]; degenerate ranges return lo exactly."""
    lo, hi = range_bps
    if not 0.0 < lo <= hi:
        raise ValueError(f"GBR range must satisfy 0 < lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return lo
    return float(rng.uniform(lo, hi))


# --- sample trace export / replay ----------------------------------------

def _sample_columns(n_traffic: int) -> list[str]:
    cols = ["interval", "ue_x_m", "ue_y_m", "shadowing_path1_db", "shadowing_path2_db"]
    for i in range(1, n_traffic + 1):
        cols += [
            f"arrivals_t{i}",
            f"queued_t{i}",
            f"gbr_path1_t{i}_bps",
            f"gbr_path2_t{i}_bps",
        ]
    return cols


def write_samples_csv(samples: Sequence[IntervalSample], path: Path | str) -> None:
    if not samples:
        raise ValueError("no samples to export")
    n_traffic = len(samples[0].arrivals)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_sample_columns(n_traffic))
        for k, s in enumerate(samples):
            row: list = [k, s.ue_position[0], s.ue_position[1], s.shadowing_db[0], s.shadowing_db[1]]
            for i in range(n_traffic):
                row += [s.arrivals[i], s.queued[i], s.gbr_path1_bps[i], s.gbr_path2_bps[i]]
            writer.writerow(row)


def read_samples_csv(path: Path | str, n_traffic: int) -> list[IntervalSample]:
    """Read a sample trace back for replay; the traffic-type count must match."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        expected = _sample_columns(n_traffic)
        if header != expected:
            raise ValueError(
                f"sample trace header mismatch: expected {expected}, got {header}"
            )
        samples: list[IntervalSample] = []
        for row in reader:
            vals = row[1:]
            pos = (float(vals[0]), float(vals[1]))
            shadow = (float(vals[2]), float(vals[3]))
            arrivals = []
            queued = []
            gbr1 = []
            gbr2 = []
            for i in range(n_traffic):
                base = 4 + 4 * i
                arrivals.append(int(vals[base]))
                queued.append(int(vals[base + 1]))
                gbr1.append(float(vals[base + 2]))
                gbr2.append(float(vals[base + 3]))
            samples.append(
                IntervalSample(
                    arrivals=tuple(arrivals),
                    queued=tuple(queued),
                    gbr_path1_bps=tuple(gbr1),
                    gbr_path2_bps=tuple(gbr2),
                    ue_position=pos,
                    shadowing_db=shadow,
                )
            )
    if not samples:
        raise ValueError(f"sample trace {path} contains no rows")
    return samples
