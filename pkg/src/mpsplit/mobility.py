"""2-D random-walk UE mobility confined to a roam disc.

The UE takes one step per interval: a uniformly random direction and a
fixed step length speed * dt. Steps that would exit the disc reflect off
the boundary, which preserves the step-length distribution.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from .config import ExperimentConfig

Point = tuple[float, float]

_MAX_REFLECTIONS = 8


@dataclass(frozen=True)
class Trajectory:
    """One UE position per interval, all inside the roam disc."""

    positions: tuple[Point, ...]
    anchor: Point
    roam_radius_m: float


def _distance(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def random_walk_step(
    pos: Point,
    speed_mps: float,
    dt_s: float,
    anchor: Point,
    roam_radius_m: float,
    rng: np.random.Generator,
) -> Point:
    """Advance one interval; reflect off the roam boundary if the step exits."""
    if speed_mps < 0.0:
        raise ValueError(f"speed must be >= 0, got {speed_mps}")
    if dt_s <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt_s}")
    if roam_radius_m <= 0.0:
        raise ValueError(f"roam radius must be > 0, got {roam_radius_m}")

    remaining = speed_mps * dt_s
    if remaining == 0.0:
        return pos

    theta = rng.uniform(0.0, 2.0 * math.pi)
    dx, dy = math.cos(theta), math.sin(theta)
    x, y = pos

    for _ in range(_MAX_REFLECTIONS):
        nx, ny = x + remaining * dx, y + remaining * dy
        if _distance((nx, ny), anchor) <= roam_radius_m:
            x, y = nx, ny
            break
        # Solve |p + t*d - anchor| = R for the boundary hit, then reflect
        # the direction about the tangent at the hit point.
        px, py = x - anchor[0], y - anchor[1]
        b = px * dx + py * dy
        c = px * px + py * py - roam_radius_m * roam_radius_m
        disc = b * b - c
        t = -b + math.sqrt(max(disc, 0.0))
        t = min(max(t, 0.0), remaining)
        x, y = x + t * dx, y + t * dy
        hx, hy = (x - anchor[0]) / roam_radius_m, (y - anchor[1]) / roam_radius_m
        dot = dx * hx + dy * hy
        dx, dy = dx - 2.0 * dot * hx, dy - 2.0 * dot * hy
        remaining -= t
        if remaining <= 0.0:
            break

    # Numerical safety: pull back onto the disc if a rounding error left
    # the point marginally outside.
    d = _distance((x, y), anchor)
    if d > roam_radius_m:
        scale = roam_radius_m / d
        x = anchor[0] + (x - anchor[0]) * scale
        y = anchor[1] + (y - anchor[1]) * scale
    return (x, y)


def build_trajectory(cfg: "ExperimentConfig", rng: np.random.Generator) -> Trajectory:
    """Generate one position per interval, anchored at the initial position.

    In fixed-position mode (distance sweeps) the UE never moves.
    """
    n = cfg.interval_count()
    anchor = cfg.ue_initial_position
    if cfg.fixed_ue_position or cfg.ue_speed_mps == 0.0:
        return Trajectory(
            positions=tuple(anchor for _ in range(n)),
            anchor=anchor,
            roam_radius_m=cfg.roam_radius_m,
        )
    positions = [anchor]
    pos = anchor
    for _ in range(n - 1):
        pos = random_walk_step(
            pos,
            cfg.ue_speed_mps,
            cfg.interval_duration_s,
            anchor,
            cfg.roam_radius_m,
            rng,
        )
        positions.append(pos)
    return Trajectory(positions=tuple(positions), anchor=anchor, roam_radius_m=cfg.roam_radius_m)


def write_trajectory_csv(
    traj: Trajectory, bs_positions: tuple[Point, Point], path: Path | str
) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["interval", "x_m", "y_m", "dist_bs1_m", "dist_bs2_m"])
        for k, p in enumerate(traj.positions):
            writer.writerow(
                [k, p[0], p[1], _distance(p, bs_positions[0]), _distance(p, bs_positions[1])]
            )
