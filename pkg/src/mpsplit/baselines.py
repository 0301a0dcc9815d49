"""Comparison strategies: fixed single path and per-interval path selection.

Fairness rules for the comparison: single-path solutions get the whole
cell bandwidth on their fixed path, while multi-path and path selection
split it equally between the two BSs; the full transmit power always
goes to whichever path(s) a solution uses; GBR draws are shared.
"""

from __future__ import annotations

from typing import Sequence

from .channel import LinkState
from .config import SOLUTION_NAMES, TrafficTypeSpec
from .latency import Decision, evaluate
from .traffic import IntervalSample

MULTI_PATH, SINGLE_PATH_1, SINGLE_PATH_2, PATH_SELECTION = SOLUTION_NAMES


def bandwidth_per_bs_hz(solution: str, total_bandwidth_hz: float) -> float:
    """Half the total for the splitting/switching solutions, all of it otherwise."""
    if solution in (MULTI_PATH, PATH_SELECTION):
        return total_bandwidth_hz / 2.0
    if solution in (SINGLE_PATH_1, SINGLE_PATH_2):
        return total_bandwidth_hz
    raise ValueError(f"unknown solution {solution!r}")


def single_path_decision(path: int, n_traffic: int, p_tot_watts: float) -> Decision:
    """All traffic and all power on one fixed path."""
    if path == 1:
        return Decision(alphas=(1.0,) * n_traffic, p1_watts=p_tot_watts, p2_watts=0.0)
    if path == 2:
        return Decision(alphas=(0.0,) * n_traffic, p1_watts=0.0, p2_watts=p_tot_watts)
    raise ValueError(f"path must be 1 or 2, got {path}")


def path_selection_decision(
    sample: IntervalSample,
    links_half_bw: tuple[LinkState, LinkState],
    traffic: Sequence[TrafficTypeSpec],
    p_tot_watts: float,
) -> Decision:
    """Route everything over whichever path has the lower summed instant latency.

    Evaluated on the half-bandwidth links; ties go to path 1.
    """
    n = len(traffic)
    cand1 = single_path_decision(1, n, p_tot_watts)
    cand2 = single_path_decision(2, n, p_tot_watts)
    obj1 = evaluate(cand1, sample, links_half_bw, traffic).objective_s
    obj2 = evaluate(cand2, sample, links_half_bw, traffic).objective_s
    return cand2 if obj2 < obj1 else cand1
