"""Time-slotted simulation loop and parameter sweeps.

Each interval: advance the UE, draw one shared sample (arrivals, queue,
GBRs, shadowing), then let every enabled solution decide and be scored
on that same sample. Sharing the draws (common random numbers) is what
makes per-interval comparisons between solutions meaningful.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import baselines, solver
from .channel import dbm_to_watts, make_link_state, pathloss_uma_nlos, sample_shadowing
from .config import ExperimentConfig, TrafficTypeSpec
from .latency import IntervalRecord
from .mobility import Trajectory, build_trajectory
from .traffic import IntervalSample, sample_arrivals, sample_gbr, sample_queue

SWEEP_PARAMETERS = ("bandwidth", "distance_to_bs2", "packet_size")

# Single-flow profile used by parameter sweeps: 500-byte packets at
# 50 pkt/s, other characteristics from the standard low-rate type.
SWEEP_TRAFFIC = TrafficTypeSpec(
    packet_size_bits=4000,
    mean_arrival_rate_pps=50.0,
    mean_queue_packets=5.0,
    latency_constraint_s=0.85,
    gbr_path1_range_bps=(200e6, 220e6),
    gbr_path2_range_bps=(180e6, 200e6),
)


@dataclass(frozen=True)
class RunResult:
    """Per-solution interval records plus everything needed to reproduce them."""

    records: dict[str, tuple[IntervalRecord, ...]]
    samples: tuple[IntervalSample, ...]
    trajectory: Trajectory
    config: ExperimentConfig
    seed: int
    wall_seconds: float


def _substreams(cfg: ExperimentConfig) -> dict[str, np.random.Generator]:
    """Named, deterministic substreams of the root seed.

    Layout (fixed): mobility, shadowing per path, then per traffic type
    arrivals / queue / GBR path 1 / GBR path 2. Keeping the draws in
    dedicated streams makes the sample sequence independent of which
    solutions are enabled.
    """
    n_traffic = len(cfg.traffic_types)
    children = np.random.SeedSequence(cfg.rng_seed).spawn(3 + 4 * n_traffic)
    streams = {
        "mobility": np.random.default_rng(children[0]),
        "shadowing1": np.random.default_rng(children[1]),
        "shadowing2": np.random.default_rng(children[2]),
    }
    for i in range(n_traffic):
        base = 3 + 4 * i
        streams[f"arrivals{i}"] = np.random.default_rng(children[base])
        streams[f"queue{i}"] = np.random.default_rng(children[base + 1])
        streams[f"gbr1_{i}"] = np.random.default_rng(children[base + 2])
        streams[f"gbr2_{i}"] = np.random.default_rng(children[base + 3])
    return streams


def draw_samples(cfg: ExperimentConfig, trajectory: Trajectory) -> tuple[IntervalSample, ...]:
    """One sample per interval, identical regardless of enabled solutions."""
    streams = _substreams(cfg)
    n_traffic = len(cfg.traffic_types)
    dt = cfg.interval_duration_s
    samples = []
    for pos in trajectory.positions:
        sh1 = sample_shadowing(cfg.shadowing_sigma_db, streams["shadowing1"])
        sh2 = sample_shadowing(cfg.shadowing_sigma_db, streams["shadowing2"])
        arrivals = []
        queued = []
        gbr1 = []
        gbr2 = []
        for i, spec in enumerate(cfg.traffic_types):
            arrivals.append(sample_arrivals(spec.mean_arrival_rate_pps, dt, streams[f"arrivals{i}"]))
            queued.append(sample_queue(spec.mean_queue_packets, streams[f"queue{i}"]))
            gbr1.append(sample_gbr(spec.gbr_path1_range_bps, streams[f"gbr1_{i}"]))
            gbr2.append(sample_gbr(spec.gbr_path2_range_bps, streams[f"gbr2_{i}"]))
        samples.append(
            IntervalSample(
                arrivals=tuple(arrivals),
                queued=tuple(queued),
                gbr_path1_bps=tuple(gbr1),
                gbr_path2_bps=tuple(gbr2),
                ue_position=pos,
                shadowing_db=(sh1, sh2),
            )
        )
    return tuple(samples)


def run(cfg: ExperimentConfig, samples: Sequence[IntervalSample] | None = None) -> RunResult:
    """Execute one full simulation; `samples` replays a recorded trace instead
    of drawing fresh ones (the trace's positions are reused for pathloss)."""
    start = time.perf_counter()
    n_intervals = cfg.interval_count()

    if samples is None:
        trajectory = build_trajectory(cfg, _substreams(cfg)["mobility"])
        samples = draw_samples(cfg, trajectory)
    else:
        samples = tuple(samples)
        if len(samples) != n_intervals:
            raise ValueError(
                f"replay trace has {len(samples)} intervals, config expects {n_intervals}"
            )
        for s in samples:
            if len(s.arrivals) != len(cfg.traffic_types):
                raise ValueError("replay trace traffic-type count does not match config")
        trajectory = Trajectory(
            positions=tuple(s.ue_position for s in samples),
            anchor=cfg.ue_initial_position,
            roam_radius_m=cfg.roam_radius_m,
        )

    p_tot = dbm_to_watts(cfg.total_tx_power_dbm)
    n_traffic = len(cfg.traffic_types)
    half_bw = cfg.total_bandwidth_hz / 2.0
    full_bw = cfg.total_bandwidth_hz
    records: dict[str, list[IntervalRecord]] = {name: [] for name in cfg.solutions}

    for k, sample in enumerate(samples):
        pos = sample.ue_position
        d1 = math.dist(pos, cfg.bs_positions[0])
        d2 = math.dist(pos, cfg.bs_positions[1])
        pl1 = pathloss_uma_nlos(d1, cfg.carrier_frequency_hz, cfg.bs_height_m, cfg.ue_height_m)
        pl2 = pathloss_uma_nlos(d2, cfg.carrier_frequency_hz, cfg.bs_height_m, cfg.ue_height_m)
        sh1, sh2 = sample.shadowing_db

        def links(bw: float):
            return (
                make_link_state(bw, pl1, sh1, cfg.noise_psd_dbm_per_hz),
                make_link_state(bw, pl2, sh2, cfg.noise_psd_dbm_per_hz),
            )

        half_links = links(half_bw)
        full_links = links(full_bw)

        for name in cfg.solutions:
            if name == baselines.MULTI_PATH:
                try:
                    _, record = solver.solve(sample, half_links, cfg.traffic_types, p_tot, cfg.solver)
                except solver.InfeasibleIntervalError as exc:
                    raise solver.InfeasibleIntervalError(
                        f"interval {k}: {exc}", interval=k
                    ) from exc
            elif name == baselines.PATH_SELECTION:
                dec = baselines.path_selection_decision(sample, half_links, cfg.traffic_types, p_tot)
                record = solver.decision_record(sample, half_links, cfg.traffic_types, dec)
            elif name == baselines.SINGLE_PATH_1:
                dec = baselines.single_path_decision(1, n_traffic, p_tot)
                record = solver.decision_record(sample, full_links, cfg.traffic_types, dec)
            elif name == baselines.SINGLE_PATH_2:
                dec = baselines.single_path_decision(2, n_traffic, p_tot)
                record = solver.decision_record(sample, full_links, cfg.traffic_types, dec)
            else:  # unreachable once the config validated
                raise ValueError(f"unknown solution {name!r}")
            records[name].append(record)

    return RunResult(
        records={name: tuple(recs) for name, recs in records.items()},
        samples=samples,
        trajectory=trajectory,
        config=cfg,
        seed=cfg.rng_seed,
        wall_seconds=time.perf_counter() - start,
    )


def _single_traffic_config(cfg: ExperimentConfig) -> ExperimentConfig:
    return replace(cfg, traffic_types=(SWEEP_TRAFFIC,))


def _config_for_value(cfg: ExperimentConfig, parameter: str, value: float) -> ExperimentConfig:
    if parameter == "bandwidth":
        return replace(cfg, total_bandwidth_hz=float(value))
    if parameter == "distance_to_bs2":
        bs1 = np.array(cfg.bs_positions[0])
        bs2 = np.array(cfg.bs_positions[1])
        axis = (bs1 - bs2) / np.linalg.norm(bs1 - bs2)
        pos = bs2 + float(value) * axis
        return replace(
            cfg,
            fixed_ue_position=True,
            ue_initial_position=(float(pos[0]), float(pos[1])),
        )
    if parameter == "packet_size":
        size_bytes = int(value)
        if size_bytes <= 0:
            raise ValueError(f"packet size must be > 0 bytes, got {value}")
        traffic = tuple(
            replace(t, packet_size_bits=8 * size_bytes) for t in cfg.traffic_types
        )
        return replace(cfg, traffic_types=traffic)
    raise ValueError(f"unknown sweep parameter {parameter!r} (known: {', '.join(SWEEP_PARAMETERS)})")


def sweep(base_cfg: ExperimentConfig, parameter: str, values: Sequence[float]):
    """One full run per value on the single-flow sweep workload.

    Returns [(value, Summary)] in the given order; every run reuses the
    base seed, so values differ only through the swept parameter.
    """
    from .metrics import summarize  # local import to avoid a cycle

    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(f"unknown sweep parameter {parameter!r} (known: {', '.join(SWEEP_PARAMETERS)})")
    if not values:
        raise ValueError("sweep needs at least one value")
    single = _single_traffic_config(base_cfg)
    out = []
    for value in values:
        cfg = _config_for_value(single, parameter, value)
        out.append((float(value), summarize(run(cfg))))
    return out
