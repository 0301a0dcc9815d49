"""Joint split-ratio and power optimization for one interval.

At a fixed power pair the objective separates per traffic type: each
term is the max of two linear functions of the split ratio, minimized in
closed form at the balancing point. That reduces the interval problem to
a 1-D search over the path-1 power, solved with a coarse grid plus local
interval-halving refinement. A dense-grid brute force is kept alongside
as an independent check (used by tests and the `oracle-check` CLI).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import LinkState, make_link_state, snr_per_watt
from .config import SolverSettings, TrafficTypeSpec
from .latency import Decision, IntervalRecord, evaluate
from .traffic import IntervalSample


class InfeasibleIntervalError(RuntimeError):
    """Raised in reject mode when no latency constraint can be met."""

    def __init__(self, message: str, interval: int | None = None):
        super().__init__(message)
        self.interval = interval


@dataclass(frozen=True)
class PathCostCoefficients:
    """Full-load latency of each traffic type on each path, in seconds.

    a1[i] (a2[i]) is the latency of sending all of traffic i on path 1
    (path 2): pkts * bits * (1/rate + 1/gbr). The per-path totals are
    then u1 = alpha * a1 and u2 = (1 - alpha) * a2.
    """

    a1: tuple[float, ...]
    a2: tuple[float, ...]


def path_cost(pkts: int, pkt_bits: int, rate_bps: float, gbr_bps: float) -> float:
    """Latency of sending all `pkts` packets over one path; inf if the path is dead."""
    if pkts == 0:
        return 0.0
    if rate_bps <= 0.0:
        return math.inf
    return pkts * pkt_bits * (1.0 / rate_bps + 1.0 / gbr_bps)


def cost_coefficients(
    sample: IntervalSample,
    rate1_bps: float,
    rate2_bps: float,
    traffic: Sequence[TrafficTypeSpec],
) -> PathCostCoefficients:
    a1 = []
    a2 = []
    for i, spec in enumerate(traffic):
        pkts = sample.arrivals[i] + sample.queued[i]
        a1.append(path_cost(pkts, spec.packet_size_bits, rate1_bps, sample.gbr_path1_bps[i]))
        a2.append(path_cost(pkts, spec.packet_size_bits, rate2_bps, sample.gbr_path2_bps[i]))
    return PathCostCoefficients(a1=tuple(a1), a2=tuple(a2))


def optimal_split(a1: float, a2: float) -> float:
    """Split ratio minimizing max(alpha*a1, (1-alpha)*a2).

    The minimizer balances the two paths: alpha* = a2 / (a1 + a2). A dead
    path forces the whole load onto the other one; when both costs are
    zero any ratio is optimal and 0.5 is returned.
    """
    if a1 < 0.0 or a2 < 0.0:
        raise ValueError("path costs must be >= 0")
    inf1, inf2 = math.isinf(a1), math.isinf(a2)
    if inf1 and inf2:
        raise InfeasibleIntervalError("both paths dead for a traffic type with pending packets")
    if inf2:
        return 1.0
    if inf1:
        return 0.0
    if a1 == 0.0 and a2 == 0.0:
        return 0.5
    return a2 / (a1 + a2)


def split_value(a1: float, a2: float) -> float:
    """Objective value at the optimal split: a1*a2 / (a1 + a2) with dead-path limits."""
    if math.isinf(a1):
        return a2
    if math.isinf(a2):
        return a1
    if a1 == 0.0 or a2 == 0.0:
        return 0.0
    return a1 * a2 / (a1 + a2)


def solve(
    sample: IntervalSample,
    links: tuple[LinkState, LinkState],
    traffic: Sequence[TrafficTypeSpec],
    p_tot_watts: float,
    settings: SolverSettings,
) -> tuple[Decision, IntervalRecord]:
    """Minimize the summed instant latency over split ratios and the power pair.

    Power is gridded linearly in watts over [0, p_tot]; the best grid
    cell is refined by interval halving. The two single-path corner
    decisions are always evaluated as final candidates, so the result is
    never worse than routing everything over the better path.
    """
    if p_tot_watts <= 0.0:
        raise ValueError(f"total power must be > 0 W, got {p_tot_watts}")
    if links[0].bandwidth_hz <= 0.0 or links[1].bandwidth_hz <= 0.0:
        raise ValueError("links must have positive bandwidth")

    k1 = snr_per_watt(links[0])
    k2 = snr_per_watt(links[1])
    b1 = links[0].bandwidth_hz
    b2 = links[1].bandwidth_hz
    n_traffic = len(traffic)
    bits = [spec.packet_size_bits for spec in traffic]
    pkts = [sample.arrivals[i] + sample.queued[i] for i in range(n_traffic)]
    gbr1 = sample.gbr_path1_bps
    gbr2 = sample.gbr_path2_bps

    def objective(p1: float) -> float:
        r1 = b1 * math.log2(1.0 + k1 * p1) if p1 > 0.0 else 0.0
        r2_power = p_tot_watts - p1
        r2 = b2 * math.log2(1.0 + k2 * r2_power) if r2_power > 0.0 else 0.0
        total = 0.0
        for i in range(n_traffic):
            total += split_value(
                path_cost(pkts[i], bits[i], r1, gbr1[i]),
                path_cost(pkts[i], bits[i], r2, gbr2[i]),
            )
        return total

    # Coarse grid over [0, p_tot], endpoints included.
    points = settings.power_grid_points
    cell = p_tot_watts / (points - 1)
    best_p1 = 0.0
    best_f = math.inf
    for j in range(points):
        p1 = p_tot_watts if j == points - 1 else j * cell
        f = objective(p1)
        if f < best_f:
            best_f, best_p1 = f, p1

    # Interval-halving refinement around the best cell: probe the quarter
    # points, re-center on the best value seen, halve the bracket.
    lo = max(0.0, best_p1 - cell)
    hi = min(p_tot_watts, best_p1 + cell)
    for _ in range(settings.refinement_iterations):
        width = hi - lo
        if width <= 0.0:
            break
        for frac in (0.25, 0.5, 0.75):
            x = lo + frac * width
            f = objective(x)
            if f < best_f:
                best_f, best_p1 = f, x
        center = min(max(best_p1, lo), hi)
        lo = max(lo, center - width / 4.0)
        hi = min(hi, center + width / 4.0)

    # Snap numerically-degenerate near-corner powers (within 1e-12 of the
    # budget) to the exact corner: a femtowatt-scale residual power only
    # produces split ratios a few ulps from 1 whose complements cancel.
    if best_p1 >= p_tot_watts * (1.0 - 1e-12):
        best_p1 = p_tot_watts
    elif best_p1 <= p_tot_watts * 1e-12:
        best_p1 = 0.0

    r1 = links[0].rate_bps(best_p1)
    r2 = links[1].rate_bps(p_tot_watts - best_p1)
    coeffs = cost_coefficients(sample, r1, r2, traffic)
    alphas = tuple(optimal_split(coeffs.a1[i], coeffs.a2[i]) for i in range(n_traffic))
    refined = Decision(alphas=alphas, p1_watts=best_p1, p2_watts=p_tot_watts - best_p1)

    # Evaluate the refined decision together with both single-path corners
    # so the returned record is exactly comparable with (and never worse
    # than) a per-interval path-selection decision under the same links.
    candidates = [
        refined,
        Decision(alphas=(1.0,) * n_traffic, p1_watts=p_tot_watts, p2_watts=0.0),
        Decision(alphas=(0.0,) * n_traffic, p1_watts=0.0, p2_watts=p_tot_watts),
    ]
    best_record: IntervalRecord | None = None
    best_decision = refined
    for dec in candidates:
        rec = evaluate(dec, sample, links, traffic)
        if best_record is None or rec.objective_s < best_record.objective_s:
            best_record, best_decision = rec, dec

    assert best_record is not None
    if not best_record.feasible and settings.feasibility_mode == "reject":
        raise InfeasibleIntervalError(
            f"no decision meets the latency constraints (best objective "
            f"{best_record.objective_s:.6g} s)"
        )
    return best_decision, best_record


def decision_record(
    sample: IntervalSample,
    links: tuple[LinkState, LinkState],
    traffic: Sequence[TrafficTypeSpec],
    decision: Decision,
) -> IntervalRecord:
    """Re-evaluate an externally supplied decision (baselines, replay)."""
    return evaluate(decision, sample, links, traffic)


# --- dense-grid brute force (verification oracle) -------------------------

def brute_force_objective(
    sample: IntervalSample,
    links: tuple[LinkState, LinkState],
    traffic: Sequence[TrafficTypeSpec],
    p_tot_watts: float,
    power_points: int = 10_000,
    alpha_points: int | None = None,
) -> float:
    """Best objective on a dense power grid, independent of `solve`'s search.

    With alpha_points=None the per-traffic inner minimum is the balancing
    value, computed in harmonic form 1/(1/a1 + 1/a2); otherwise it is the
    minimum of max(alpha*a1, (1-alpha)*a2) over a dense alpha grid, which
    shares nothing with the closed form.
    """
    p1 = np.linspace(0.0, p_tot_watts, power_points)
    k1 = snr_per_watt(links[0])
    k2 = snr_per_watt(links[1])
    r1 = links[0].bandwidth_hz * np.log2(1.0 + k1 * p1)
    r2 = links[1].bandwidth_hz * np.log2(1.0 + k2 * (p_tot_watts - p1))

    total = np.zeros_like(p1)
    big = 1e300  # stand-in for a dead path; keeps 0 * inf out of the grids
    for i, spec in enumerate(traffic):
        pkts = sample.arrivals[i] + sample.queued[i]
        if pkts == 0:
            continue
        load_bits = pkts * spec.packet_size_bits
        with np.errstate(divide="ignore"):
            a1 = load_bits * (1.0 / r1 + 1.0 / sample.gbr_path1_bps[i])
            a2 = load_bits * (1.0 / r2 + 1.0 / sample.gbr_path2_bps[i])
        if alpha_points is None:
            with np.errstate(divide="ignore"):
                total += 1.0 / (1.0 / a1 + 1.0 / a2)
        else:
            alphas = np.linspace(0.0, 1.0, alpha_points)
            a1c = np.minimum(a1, big)
            a2c = np.minimum(a2, big)
            # chunk over the power axis to bound memory
            chunk = max(1, 2_000_000 // alpha_points)
            vals = np.empty_like(p1)
            for s in range(0, len(p1), chunk):
                e = min(s + chunk, len(p1))
                m = np.maximum(
                    np.outer(a1c[s:e], alphas), np.outer(a2c[s:e], 1.0 - alphas)
                )
                vals[s:e] = m.min(axis=1)
            total += vals
    return float(total.min())


def random_instance(
    rng: np.random.Generator, max_traffic: int = 4, moderate: bool = False
) -> tuple[IntervalSample, tuple[LinkState, LinkState], tuple[TrafficTypeSpec, ...], float]:
    """Randomized solver instance for oracle-equivalence checks.

    `moderate` bounds the path asymmetry so a 1e-4-step alpha grid stays
    within ~0.1% of the continuous inner minimum.
    """
    n_traffic = int(rng.integers(1, max_traffic + 1))
    psd = -174.0
    b1 = 10.0 ** rng.uniform(6.0, 8.3)
    b2 = b1 * 10.0 ** rng.uniform(-0.3, 0.3) if moderate else 10.0 ** rng.uniform(6.0, 8.3)
    pl1 = rng.uniform(70.0, 140.0)
    pl2 = pl1 + rng.uniform(-12.0, 12.0) if moderate else rng.uniform(70.0, 140.0)
    links = (
        make_link_state(b1, pl1, 0.0, psd),
        make_link_state(b2, pl2, 0.0, psd),
    )
    p_tot = 10.0 ** rng.uniform(-2.0, 0.0)

    specs = []
    arrivals = []
    queued = []
    gbr1 = []
    gbr2 = []
    for _ in range(n_traffic):
        pkts = int(rng.integers(0, 200))
        size_bits = 8 * int(rng.integers(10, 1501))
        c1 = 10.0 ** rng.uniform(6.5, 9.0)
        c2 = c1 * 10.0 ** rng.uniform(-0.3, 0.3) if moderate else 10.0 ** rng.uniform(6.5, 9.0)
        specs.append(
            TrafficTypeSpec(
                packet_size_bits=size_bits,
                mean_arrival_rate_pps=float(pkts),
                mean_queue_packets=0.0,
                latency_constraint_s=1e9,
                gbr_path1_range_bps=(c1, c1),
                gbr_path2_range_bps=(c2, c2),
            )
        )
        arrivals.append(pkts)
        queued.append(0)
        gbr1.append(c1)
        gbr2.append(c2)

    sample = IntervalSample(
        arrivals=tuple(arrivals),
        queued=tuple(queued),
        gbr_path1_bps=tuple(gbr1),
        gbr_path2_bps=tuple(gbr2),
        ue_position=(0.0, 0.0),
        shadowing_db=(0.0, 0.0),
    )
    return sample, links, tuple(specs), p_tot


def oracle_gap(
    rng: np.random.Generator,
    settings: SolverSettings,
    power_points: int = 10_000,
    alpha_points: int | None = None,
    moderate: bool = False,
) -> float:
    """Relative gap between `solve` and the brute force on one random instance."""
    sample, links, specs, p_tot = random_instance(rng, moderate=moderate)
    _, record = solve(sample, links, specs, p_tot, settings)
    reference = brute_force_objective(
        sample, links, specs, p_tot, power_points=power_points, alpha_points=alpha_points
    )
    if reference == 0.0:
        return abs(record.objective_s)
    return abs(record.objective_s - reference) / reference
