"""Figure rendering from validated result tables.

Three figure kinds: instant-latency CDFs (one curve per solution),
decision time series (split ratios or transmit powers), and sweep lines
(mean latency versus a swept parameter). Rendering is read-only over the
inputs and writes one image per call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import read_cdf, read_decisions, read_sweep

KINDS = ("cdf", "decision_timeseries", "sweep_lines")
DECISION_FIELDS = ("ratio", "power")

# stable colors per solution across all figure kinds
SOLUTION_STYLE = {
    "multi_path": "tab:blue",
    "path_selection": "tab:green",
    "single_path_1": "tab:red",
    "single_path_2": "tab:orange",
}

SWEEP_AXIS_LABELS = {
    "bandwidth": "Total bandwidth (Hz)",
    "distance_to_bs2": "Distance to BS 2 (m)",
    "packet_size": "Packet size (bytes)",
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    input_path: Path
    output_path: Path
    traffic: int | None = None
    solutions: tuple[str, ...] | None = None
    decision_field: str = "ratio"
    decision_solution: str = "multi_path"
    title: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r} (known: {', '.join(KINDS)})")
        if self.decision_field not in DECISION_FIELDS:
            raise ValueError(
                f"unknown decision field {self.decision_field!r} (known: {', '.join(DECISION_FIELDS)})"
            )


def _color(solution: str):
    return SOLUTION_STYLE.get(solution)


def _plot_cdf(spec: FigureSpec, ax) -> None:
    curves = read_cdf(spec.input_path)
    traffic = spec.traffic if spec.traffic is not None else curves.traffics()[0]
    wanted = spec.solutions or tuple(curves.solutions())
    plotted = 0
    for solution in wanted:
        key = (solution, traffic)
        if key not in curves.curves:
            continue
        lats, probs = curves.curves[key]
        ax.step(lats, probs, where="post", label=solution, color=_color(solution))
        plotted += 1
    if plotted == 0:
        raise ValueError(f"no curves for traffic {traffic} in {spec.input_path}")
    ax.set_xlabel("Instant latency (ms)")
    ax.set_ylabel("CDF")
    ax.set_ylim(0.0, 1.02)
    ax.set_title(spec.title or f"Instant latency CDF, traffic {traffic}")


def _plot_decisions(spec: FigureSpec, ax) -> None:
    trace = read_decisions(spec.input_path, solution=spec.decision_solution)
    if spec.decision_field == "ratio":
        for t, series in sorted(trace.alphas.items()):
            ax.plot(trace.intervals, series, label=f"traffic {t}, path 1")
            ax.plot(
                trace.intervals,
                [1.0 - a for a in series],
                linestyle="--",
                label=f"traffic {t}, path 2",
            )
        ax.set_ylabel("Traffic ratio")
        ax.set_ylim(-0.02, 1.02)
        ax.set_title(spec.title or "Optimized traffic ratio")
    else:
        for series, name, style in (
            (trace.p1_dbm, "path 1", "-"),
            (trace.p2_dbm, "path 2", "--"),
        ):
            cleaned = [x if math.isfinite(x) else math.nan for x in series]
            ax.plot(trace.intervals, cleaned, style, label=name)
        ax.set_ylabel("Transmit power (dBm)")
        ax.set_title(spec.title or "Optimized transmit power")
    ax.set_xlabel("Interval")


def _plot_sweep(spec: FigureSpec, ax) -> None:
    table = read_sweep(spec.input_path)
    traffic = spec.traffic if spec.traffic is not None else min(t for _, t in table.lines)
    wanted = spec.solutions
    plotted = 0
    for (solution, t), (xs, ys) in sorted(table.lines.items()):
        if t != traffic or (wanted and solution not in wanted):
            continue
        ax.plot(xs, ys, marker="o", label=solution, color=_color(solution))
        plotted += 1
    if plotted == 0:
        raise ValueError(f"no sweep lines for traffic {traffic} in {spec.input_path}")
    ax.set_xlabel(SWEEP_AXIS_LABELS.get(table.parameter, table.parameter))
    ax.set_ylabel("Average latency (ms)")
    ax.set_title(spec.title or f"Average latency vs {table.parameter}")


def plot(spec: FigureSpec) -> Path:
    """Render one figure and return the written path."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        if spec.kind == "cdf":
            _plot_cdf(spec, ax)
        elif spec.kind == "decision_timeseries":
            _plot_decisions(spec, ax)
        else:
            _plot_sweep(spec, ax)
        ax.grid(alpha=0.4)
        ax.legend(fontsize=8)
        fig.tight_layout()
        out = Path(spec.output_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=150)
    finally:
        plt.close(fig)
    return Path(spec.output_path)
