"""Time-slotted simulator and optimizer for uplink multi-path traffic splitting."""

__version__ = "0.1.0"

from .config import (  # noqa: F401
    ConfigError,
    ExperimentConfig,
    SolverSettings,
    TrafficTypeSpec,
    load_config,
    save_config,
    scenario_preset,
)
from .engine import RunResult, run, sweep  # noqa: F401
from .latency import Decision, IntervalRecord  # noqa: F401
from .metrics import Summary, export, load_summary, summarize  # noqa: F401
from .solver import InfeasibleIntervalError  # noqa: F401
from .traffic import IntervalSample  # noqa: F401
