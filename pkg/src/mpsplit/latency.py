"""Per-interval latency arithmetic.

Each traffic type splits its backlog between two uplink paths; every
path contributes a wireless transmission term and a transport (N3) term.
The instant latency of a traffic type is the larger of its two per-path
totals, and the interval objective is the sum of instant latencies.

Latencies are finite non-negative floats with `math.inf` as the explicit
"dead path carrying traffic" sentinel; NaN is never produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, TYPE_CHECKING

from .channel import LinkState

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for typing only
    from .config import TrafficTypeSpec
    from .traffic import IntervalSample


@dataclass(frozen=True)
class Decision:
    """Solver output for one interval: per-traffic split ratios and the power pair.

    `alphas[i]` is the portion of traffic i on path 1; the complement goes
    to path 2. Powers are in watts and must sum to the configured total.
    """

    alphas: tuple[float, ...]
    p1_watts: float
    p2_watts: float

    def __post_init__(self) -> None:
        for i, a in enumerate(self.alphas):
            if not 0.0 <= a <= 1.0:
                raise ValueError(f"alpha[{i}] = {a} outside [0, 1]")
        if self.p1_watts < 0.0 or self.p2_watts < 0.0:
            raise ValueError("per-path powers must be >= 0 W")


@dataclass(frozen=True)
class IntervalRecord:
    """Evaluated outcome of one decision on one interval's sample."""

    wireless_path1_s: tuple[float, ...]
    wireless_path2_s: tuple[float, ...]
    n3_path1_s: tuple[float, ...]
    n3_path2_s: tuple[float, ...]
    total_path1_s: tuple[float, ...]
    total_path2_s: tuple[float, ...]
    instant_s: tuple[float, ...]
    deadline_met: tuple[bool, ...]
    decision: Decision
    objective_s: float
    feasible: bool


def wireless_latency(portion: float, pkts: int, pkt_bits: int, rate_bps: float) -> float:
    """Transmission time of `portion` of `pkts` packets at `rate_bps`.

    Zero traffic costs zero time even on a dead (zero-rate) path; positive
    traffic on a dead path costs +inf.
    """
    if not 0.0 <= portion <= 1.0:
        raise ValueError(f"portion = {portion} outside [0, 1]")
    if pkts < 0:
        raise ValueError(f"packet count must be >= 0, got {pkts}")
    if rate_bps < 0.0:
        raise ValueError(f"rate must be >= 0 bits/s, got {rate_bps}")
    bits = portion * pkts * pkt_bits
    if bits == 0.0:
        return 0.0
    if rate_bps == 0.0:
        return math.inf
    return bits / rate_bps


def n3_latency(portion: float, pkts: int, pkt_bits: int, gbr_bps: float) -> float:
    """Transport-link time of `portion` of `pkts` packets at the flow's GBR."""
    if gbr_bps <= 0.0:
        raise ValueError(f"GBR must be > 0 bits/s, got {gbr_bps}")
    return portion * pkts * pkt_bits / gbr_bps


def evaluate(
    decision: Decision,
    sample: "IntervalSample",
    links: tuple[LinkState, LinkState],
    traffic: Sequence["TrafficTypeSpec"],
) -> IntervalRecord:
    """Evaluate a decision against one interval's random draws.

    Feasibility requires every per-path total to stay within its traffic
    type's latency constraint on both paths.
    """
    if len(decision.alphas) != len(traffic):
        raise ValueError(
            f"decision has {len(decision.alphas)} alphas for {len(traffic)} traffic types"
        )
    rate1 = links[0].rate_bps(decision.p1_watts)
    rate2 = links[1].rate_bps(decision.p2_watts)

    t1: list[float] = []
    t2: list[float] = []
    d1: list[float] = []
    d2: list[float] = []
    u1: list[float] = []
    u2: list[float] = []
    instant: list[float] = []
    met: list[bool] = []
    feasible = True

    for i, spec in enumerate(traffic):
        pkts = sample.arrivals[i] + sample.queued[i]
        alpha = decision.alphas[i]
        bits = spec.packet_size_bits
        w1 = wireless_latency(alpha, pkts, bits, rate1)
        w2 = wireless_latency(1.0 - alpha, pkts, bits, rate2)
        n1 = n3_latency(alpha, pkts, bits, sample.gbr_path1_bps[i])
        n2 = n3_latency(1.0 - alpha, pkts, bits, sample.gbr_path2_bps[i])
        tot1 = w1 + n1
        tot2 = w2 + n2
        inst = max(tot1, tot2)
        t1.append(w1)
        t2.append(w2)
        d1.append(n1)
        d2.append(n2)
        u1.append(tot1)
        u2.append(tot2)
        instant.append(inst)
        met.append(inst <= spec.latency_constraint_s)
        if tot1 > spec.latency_constraint_s or tot2 > spec.latency_constraint_s:
            feasible = False

    return IntervalRecord(
        wireless_path1_s=tuple(t1),
        wireless_path2_s=tuple(t2),
        n3_path1_s=tuple(d1),
        n3_path2_s=tuple(d2),
        total_path1_s=tuple(u1),
        total_path2_s=tuple(u2),
        instant_s=tuple(instant),
        deadline_met=tuple(met),
        decision=decision,
        objective_s=sum(instant),
        feasible=feasible,
    )
