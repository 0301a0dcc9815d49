"""Experiment configuration: load, validate, default and save.

Configs live in flat INI-style files with one section per concern
([radio], [scenario], [run], [solver]) plus one [traffic.N] section per
traffic type. Every key is optional; omitted keys fall back to the
defaults of the standard two-type workload (packet sizes 100 and 300
bytes, arrival rates 200 and 50 pkt/s, and so on). The full key list is
documented in the README.

A loaded config is immutable and safe to share across runs.
"""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass, field, replace
from io import StringIO
from pathlib import Path

ENV_SEED = "MPSPLIT_SEED"

SOLUTION_NAMES = ("multi_path", "single_path_1", "single_path_2", "path_selection")
FEASIBILITY_MODES = ("reject", "flag_and_use")

Point = tuple[float, float]


class ConfigError(ValueError):
    """Config file or override rejected; the message names field and constraint."""


@dataclass(frozen=True)
class TrafficTypeSpec:
    """Characteristics of one uplink traffic type."""

    packet_size_bits: int
    mean_arrival_rate_pps: float
    mean_queue_packets: float
    latency_constraint_s: float
    gbr_path1_range_bps: tuple[float, float]
    gbr_path2_range_bps: tuple[float, float]


@dataclass(frozen=True)
class SolverSettings:
    power_grid_points: int = 65
    refinement_iterations: int = 32
    alpha_tolerance: float = 1e-3
    feasibility_mode: str = "flag_and_use"


@dataclass(frozen=True)
class ExperimentConfig:
    traffic_types: tuple[TrafficTypeSpec, ...]
    total_bandwidth_hz: float = 100e6
    carrier_frequency_hz: float = 2.6e9
    total_tx_power_dbm: float = 23.0
    noise_psd_dbm_per_hz: float = -174.0
    bs_positions: tuple[Point, Point] = ((0.0, 0.0), (500.0, 0.0))
    bs_height_m: float = 25.0
    ue_height_m: float = 1.5
    ue_initial_position: Point = (250.0, 0.0)
    ue_speed_mps: float = 1.0
    roam_radius_m: float = 50.0
    fixed_ue_position: bool = False
    interval_duration_s: float = 0.5
    simulation_time_s: float = 500.0
    shadowing_sigma_db: float = 7.8
    solutions: tuple[str, ...] = SOLUTION_NAMES
    solver: SolverSettings = field(default_factory=SolverSettings)
    rng_seed: int = 1

    def interval_count(self) -> int:
        return int(self.simulation_time_s / self.interval_duration_s + 1e-9)


# Default two-type workload; per-index fallbacks for [traffic.1]/[traffic.2].
DEFAULT_TRAFFIC_TYPES = (
    TrafficTypeSpec(
        packet_size_bits=800,
        mean_arrival_rate_pps=200.0,
        mean_queue_packets=10.0,
        latency_constraint_s=0.9,
        gbr_path1_range_bps=(100e6, 140e6),
        gbr_path2_range_bps=(110e6, 130e6),
    ),
    TrafficTypeSpec(
        packet_size_bits=2400,
        mean_arrival_rate_pps=50.0,
        mean_queue_packets=5.0,
        latency_constraint_s=0.85,
        gbr_path1_range_bps=(200e6, 220e6),
        gbr_path2_range_bps=(180e6, 200e6),
    ),
)

_TRAFFIC_KEYS = (
    "packet_size_bytes",
    "mean_arrival_rate_pps",
    "mean_queue_packets",
    "latency_constraint_s",
    "gbr_path1_bps",
    "gbr_path2_bps",
)
_RADIO_KEYS = (
    "total_bandwidth_hz",
    "carrier_frequency_hz",
    "total_tx_power_dbm",
    "noise_psd_dbm_per_hz",
    "shadowing_sigma_db",
)
_SCENARIO_KEYS = (
    "bs1_position_m",
    "bs2_position_m",
    "bs_height_m",
    "ue_height_m",
    "ue_initial_position_m",
    "ue_speed_mps",
    "roam_radius_m",
    "fixed_ue_position",
)
_RUN_KEYS = ("interval_duration_s", "simulation_time_s", "solutions", "rng_seed")
_SOLVER_KEYS = (
    "power_grid_points",
    "refinement_iterations",
    "alpha_tolerance",
    "feasibility_mode",
)


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}: not a number: {raw!r}") from None


def _parse_int(section: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}: not an integer: {raw!r}") from None


def _parse_bool(section: str, key: str, raw: str) -> bool:
    v = raw.strip().lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{section}.{key}: not a boolean: {raw!r}")


def _parse_pair(section: str, key: str, raw: str) -> tuple[float, float]:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"{section}.{key}: expected two comma-separated numbers, got {raw!r}")
    return (_parse_float(section, key, parts[0]), _parse_float(section, key, parts[1]))


Sections = dict[str, dict[str, str]]


def _to_sections(cfg: ExperimentConfig) -> Sections:
    """Canonical string form; floats keep full precision so save/load round-trips."""
    sections: Sections = {
        "radio": {
            "total_bandwidth_hz": repr(cfg.total_bandwidth_hz),
            "carrier_frequency_hz": repr(cfg.carrier_frequency_hz),
            "total_tx_power_dbm": repr(cfg.total_tx_power_dbm),
            "noise_psd_dbm_per_hz": repr(cfg.noise_psd_dbm_per_hz),
            "shadowing_sigma_db": repr(cfg.shadowing_sigma_db),
        },
        "scenario": {
            "bs1_position_m": f"{cfg.bs_positions[0][0]!r}, {cfg.bs_positions[0][1]!r}",
            "bs2_position_m": f"{cfg.bs_positions[1][0]!r}, {cfg.bs_positions[1][1]!r}",
            "bs_height_m": repr(cfg.bs_height_m),
            "ue_height_m": repr(cfg.ue_height_m),
            "ue_initial_position_m": f"{cfg.ue_initial_position[0]!r}, {cfg.ue_initial_position[1]!r}",
            "ue_speed_mps": repr(cfg.ue_speed_mps),
            "roam_radius_m": repr(cfg.roam_radius_m),
            "fixed_ue_position": "true" if cfg.fixed_ue_position else "false",
        },
        "run": {
            "interval_duration_s": repr(cfg.interval_duration_s),
            "simulation_time_s": repr(cfg.simulation_time_s),
            "solutions": ", ".join(cfg.solutions),
            "rng_seed": str(cfg.rng_seed),
        },
        "solver": {
            "power_grid_points": str(cfg.solver.power_grid_points),
            "refinement_iterations": str(cfg.solver.refinement_iterations),
            "alpha_tolerance": repr(cfg.solver.alpha_tolerance),
            "feasibility_mode": cfg.solver.feasibility_mode,
        },
    }
    for i, t in enumerate(cfg.traffic_types, start=1):
        if t.packet_size_bits % 8 != 0:
            raise ConfigError(
                f"traffic.{i}.packet_size_bits: {t.packet_size_bits} is not a whole byte count"
            )
        sections[f"traffic.{i}"] = {
            "packet_size_bytes": str(t.packet_size_bits // 8),
            "mean_arrival_rate_pps": repr(t.mean_arrival_rate_pps),
            "mean_queue_packets": repr(t.mean_queue_packets),
            "latency_constraint_s": repr(t.latency_constraint_s),
            "gbr_path1_bps": f"{t.gbr_path1_range_bps[0]!r}, {t.gbr_path1_range_bps[1]!r}",
            "gbr_path2_bps": f"{t.gbr_path2_range_bps[0]!r}, {t.gbr_path2_range_bps[1]!r}",
        }
    return sections


def _check_known_keys(sections: Sections) -> None:
    known = {
        "radio": _RADIO_KEYS,
        "scenario": _SCENARIO_KEYS,
        "run": _RUN_KEYS,
        "solver": _SOLVER_KEYS,
    }
    for name, entries in sections.items():
        if name.startswith("traffic."):
            allowed = _TRAFFIC_KEYS
            suffix = name.split(".", 1)[1]
            if not suffix.isdigit() or int(suffix) < 1:
                raise ConfigError(f"{name}: traffic sections must be named traffic.1, traffic.2, ...")
        elif name in known:
            allowed = known[name]
        else:
            raise ConfigError(f"{name}: unknown section")
        for key in entries:
            if key not in allowed:
                raise ConfigError(f"{name}.{key}: unknown key")


def _traffic_from_section(index: int, entries: dict[str, str]) -> TrafficTypeSpec:
    sec = f"traffic.{index}"
    default = DEFAULT_TRAFFIC_TYPES[index - 1] if index <= len(DEFAULT_TRAFFIC_TYPES) else None

    def need(key: str) -> str:
        if key in entries:
            return entries[key]
        if default is None:
            raise ConfigError(f"{sec}.{key}: required (no default for traffic index {index})")
        return ""

    raw = need("packet_size_bytes")
    if raw:
        size_bits = 8 * _parse_int(sec, "packet_size_bytes", raw)
    else:
        size_bits = default.packet_size_bits  # type: ignore[union-attr]
    raw = need("mean_arrival_rate_pps")
    rate = _parse_float(sec, "mean_arrival_rate_pps", raw) if raw else default.mean_arrival_rate_pps  # type: ignore[union-attr]
    raw = need("mean_queue_packets")
    queue = _parse_float(sec, "mean_queue_packets", raw) if raw else default.mean_queue_packets  # type: ignore[union-attr]
    raw = need("latency_constraint_s")
    tmax = _parse_float(sec, "latency_constraint_s", raw) if raw else default.latency_constraint_s  # type: ignore[union-attr]
    raw = need("gbr_path1_bps")
    gbr1 = _parse_pair(sec, "gbr_path1_bps", raw) if raw else default.gbr_path1_range_bps  # type: ignore[union-attr]
    raw = need("gbr_path2_bps")
    gbr2 = _parse_pair(sec, "gbr_path2_bps", raw) if raw else default.gbr_path2_range_bps  # type: ignore[union-attr]
    return TrafficTypeSpec(
        packet_size_bits=size_bits,
        mean_arrival_rate_pps=rate,
        mean_queue_packets=queue,
        latency_constraint_s=tmax,
        gbr_path1_range_bps=gbr1,
        gbr_path2_range_bps=gbr2,
    )


def _build_config(sections: Sections) -> ExperimentConfig:
    _check_known_keys(sections)
    base = ExperimentConfig(traffic_types=DEFAULT_TRAFFIC_TYPES)
    merged = _to_sections(base)
    traffic_sections = sorted(
        (int(name.split(".", 1)[1]), name) for name in sections if name.startswith("traffic.")
    )
    if traffic_sections:
        indices = [i for i, _ in traffic_sections]
        if indices != list(range(1, len(indices) + 1)):
            raise ConfigError(
                f"traffic sections must be contiguous from traffic.1; got indices {indices}"
            )
        traffic = tuple(
            _traffic_from_section(i, sections[name]) for i, name in traffic_sections
        )
    else:
        traffic = DEFAULT_TRAFFIC_TYPES
    for name in ("radio", "scenario", "run", "solver"):
        merged[name].update(sections.get(name, {}))

    radio = merged["radio"]
    scen = merged["scenario"]
    run = merged["run"]
    solv = merged["solver"]

    solutions = tuple(
        s.strip() for s in run["solutions"].split(",") if s.strip()
    )
    cfg = ExperimentConfig(
        traffic_types=traffic,
        total_bandwidth_hz=_parse_float("radio", "total_bandwidth_hz", radio["total_bandwidth_hz"]),
        carrier_frequency_hz=_parse_float("radio", "carrier_frequency_hz", radio["carrier_frequency_hz"]),
        total_tx_power_dbm=_parse_float("radio", "total_tx_power_dbm", radio["total_tx_power_dbm"]),
        noise_psd_dbm_per_hz=_parse_float("radio", "noise_psd_dbm_per_hz", radio["noise_psd_dbm_per_hz"]),
        shadowing_sigma_db=_parse_float("radio", "shadowing_sigma_db", radio["shadowing_sigma_db"]),
        bs_positions=(
            _parse_pair("scenario", "bs1_position_m", scen["bs1_position_m"]),
            _parse_pair("scenario", "bs2_position_m", scen["bs2_position_m"]),
        ),
        bs_height_m=_parse_float("scenario", "bs_height_m", scen["bs_height_m"]),
        ue_height_m=_parse_float("scenario", "ue_height_m", scen["ue_height_m"]),
        ue_initial_position=_parse_pair("scenario", "ue_initial_position_m", scen["ue_initial_position_m"]),
        ue_speed_mps=_parse_float("scenario", "ue_speed_mps", scen["ue_speed_mps"]),
        roam_radius_m=_parse_float("scenario", "roam_radius_m", scen["roam_radius_m"]),
        fixed_ue_position=_parse_bool("scenario", "fixed_ue_position", scen["fixed_ue_position"]),
        interval_duration_s=_parse_float("run", "interval_duration_s", run["interval_duration_s"]),
        simulation_time_s=_parse_float("run", "simulation_time_s", run["simulation_time_s"]),
        solutions=solutions,
        solver=SolverSettings(
            power_grid_points=_parse_int("solver", "power_grid_points", solv["power_grid_points"]),
            refinement_iterations=_parse_int("solver", "refinement_iterations", solv["refinement_iterations"]),
            alpha_tolerance=_parse_float("solver", "alpha_tolerance", solv["alpha_tolerance"]),
            feasibility_mode=solv["feasibility_mode"].strip(),
        ),
        rng_seed=_parse_int("run", "rng_seed", run["rng_seed"]),
    )
    validate_config(cfg)
    return cfg


def validate_config(cfg: ExperimentConfig) -> None:
    """Raise ConfigError on the first violated field constraint."""
    if not cfg.traffic_types:
        raise ConfigError("traffic: at least one traffic type is required")
    for i, t in enumerate(cfg.traffic_types, start=1):
        sec = f"traffic.{i}"
        if t.packet_size_bits <= 0:
            raise ConfigError(f"{sec}.packet_size_bytes: must be > 0")
        if t.mean_arrival_rate_pps < 0:
            raise ConfigError(f"{sec}.mean_arrival_rate_pps: must be >= 0")
        if t.mean_queue_packets < 0:
            raise ConfigError(f"{sec}.mean_queue_packets: must be >= 0")
        if t.latency_constraint_s <= 0:
            raise ConfigError(f"{sec}.latency_constraint_s: must be > 0")
        for key, rng in (("gbr_path1_bps", t.gbr_path1_range_bps), ("gbr_path2_bps", t.gbr_path2_range_bps)):
            lo, hi = rng
            if not 0.0 < lo <= hi:
                raise ConfigError(f"{sec}.{key}: lower bound must be > 0 and <= upper bound, got [{lo}, {hi}]")
    if cfg.total_bandwidth_hz <= 0:
        raise ConfigError("radio.total_bandwidth_hz: must be > 0")
    if cfg.carrier_frequency_hz <= 0:
        raise ConfigError("radio.carrier_frequency_hz: must be > 0")
    if cfg.shadowing_sigma_db < 0:
        raise ConfigError("radio.shadowing_sigma_db: must be >= 0")
    if cfg.bs_positions[0] == cfg.bs_positions[1]:
        raise ConfigError("scenario.bs2_position_m: BS positions must be distinct")
    if cfg.bs_height_m <= 0:
        raise ConfigError("scenario.bs_height_m: must be > 0")
    if cfg.ue_height_m <= 0:
        raise ConfigError("scenario.ue_height_m: must be > 0")
    if cfg.ue_speed_mps < 0:
        raise ConfigError("scenario.ue_speed_mps: must be >= 0")
    if cfg.roam_radius_m <= 0:
        raise ConfigError("scenario.roam_radius_m: must be > 0")
    if cfg.interval_duration_s <= 0:
        raise ConfigError("run.interval_duration_s: must be > 0")
    if cfg.simulation_time_s <= 0:
        raise ConfigError("run.simulation_time_s: must be > 0")
    if cfg.interval_count() < 1:
        raise ConfigError(
            "run.simulation_time_s: must cover at least one whole interval of "
            f"{cfg.interval_duration_s} s"
        )
    if not cfg.solutions:
        raise ConfigError("run.solutions: at least one solution must be enabled")
    for s in cfg.solutions:
        if s not in SOLUTION_NAMES:
            raise ConfigError(f"run.solutions: unknown solution {s!r} (known: {', '.join(SOLUTION_NAMES)})")
    if len(set(cfg.solutions)) != len(cfg.solutions):
        raise ConfigError("run.solutions: duplicate solution names")
    if cfg.solver.power_grid_points < 2:
        raise ConfigError("solver.power_grid_points: must be >= 2")
    if cfg.solver.refinement_iterations < 0:
        raise ConfigError("solver.refinement_iterations: must be >= 0")
    if not 0.0 < cfg.solver.alpha_tolerance < 0.5:
        raise ConfigError("solver.alpha_tolerance: must be in (0, 0.5)")
    if cfg.solver.feasibility_mode not in FEASIBILITY_MODES:
        raise ConfigError(
            f"solver.feasibility_mode: must be one of {', '.join(FEASIBILITY_MODES)}"
        )
    if not math.isfinite(cfg.total_tx_power_dbm):
        raise ConfigError("radio.total_tx_power_dbm: must be finite")


def _env_seed() -> int | None:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"environment {ENV_SEED}: not an integer: {raw!r}") from None


def _apply_overrides(sections: Sections, overrides: dict[str, str] | None) -> Sections:
    if not overrides:
        return sections
    out = {name: dict(entries) for name, entries in sections.items()}
    for dotted, value in overrides.items():
        section, _, key = dotted.rpartition(".")
        if not section or not key:
            raise ConfigError(f"override {dotted!r}: expected section.key=value")
        out.setdefault(section, {})[key] = value
    _check_known_keys(out)
    return out


def load_config(path: Path | str, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    """Load, default and validate a config file.

    `overrides` maps dotted keys (e.g. "radio.total_bandwidth_hz") to raw
    string values and is applied before validation. The MPSPLIT_SEED
    environment variable, when set, overrides the file's rng_seed.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep keys case-sensitive
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    sections: Sections = {name: dict(parser[name]) for name in parser.sections()}
    sections = _apply_overrides(sections, overrides)
    cfg = _build_config(sections)
    env = _env_seed()
    if env is not None:
        cfg = replace(cfg, rng_seed=env)
    return cfg


def scenario_preset(name: str, total_bandwidth_hz: float) -> ExperimentConfig:
    """Standard two-BS geometries.

    scenario1 starts the UE midway between the BSs (250 m from each);
    scenario2 starts it next to BS 2 (25 m away, 475 m from BS 1). The
    BSs sit 500 m apart on the x axis in both cases.
    """
    if name == "scenario1":
        ue0 = (250.0, 0.0)
    elif name == "scenario2":
        ue0 = (475.0, 0.0)
    else:
        raise ConfigError(f"unknown scenario preset {name!r} (known: scenario1, scenario2)")
    cfg = ExperimentConfig(
        traffic_types=DEFAULT_TRAFFIC_TYPES,
        total_bandwidth_hz=total_bandwidth_hz,
        ue_initial_position=ue0,
    )
    validate_config(cfg)
    env = _env_seed()
    if env is not None:
        cfg = replace(cfg, rng_seed=env)
    return cfg


def config_with_overrides(cfg: ExperimentConfig, overrides: dict[str, str]) -> ExperimentConfig:
    """Re-apply dotted string overrides on top of an existing config."""
    sections = _apply_overrides(_to_sections(cfg), overrides)
    return _build_config(sections)


def config_to_ini(cfg: ExperimentConfig) -> str:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    for name, entries in _to_sections(cfg).items():
        parser[name] = entries
    buf = StringIO()
    parser.write(buf)
    return buf.getvalue()


def save_config(cfg: ExperimentConfig, path: Path | str) -> None:
    Path(path).write_text(config_to_ini(cfg))
