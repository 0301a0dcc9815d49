import dataclasses

import numpy as np
import pytest

from mpsplit import run, scenario_preset
from mpsplit.config import SolverSettings
from mpsplit.engine import SWEEP_TRAFFIC, draw_samples, sweep
from mpsplit.mobility import build_trajectory
from mpsplit.solver import InfeasibleIntervalError
from mpsplit.traffic import read_samples_csv, write_samples_csv


class TestRun:
    def test_full_config_yields_1000_intervals(self, scenario1_full_run):
        for records in scenario1_full_run.records.values():
            assert len(records) == 1000
        assert len(scenario1_full_run.samples) == 1000

    def test_same_seed_is_bit_identical(self, make_config):
        cfg = make_config(sim_time=20.0, seed=12)
        a = run(cfg)
        b = run(cfg)
        assert a.records == b.records
        assert a.samples == b.samples
        assert a.trajectory == b.trajectory

    def test_toggling_solutions_does_not_perturb_others(self, make_config):
        cfg_all = make_config(sim_time=20.0, seed=13)
        cfg_multi = dataclasses.replace(cfg_all, solutions=("multi_path",))
        full = run(cfg_all)
        solo = run(cfg_multi)
        assert full.samples == solo.samples
        assert full.records["multi_path"] == solo.records["multi_path"]

    def test_common_sample_sequence_across_solutions(self, make_config):
        cfg = make_config(sim_time=20.0, seed=14)
        result = run(cfg)
        # every solution saw the same number of intervals from the one trace
        counts = {len(records) for records in result.records.values()}
        assert counts == {cfg.interval_count()}

    def test_dominance_over_path_selection(self, make_config):
        for scenario in ("scenario1", "scenario2"):
            cfg = make_config(scenario, sim_time=30.0, seed=15)
            result = run(cfg)
            mp = result.records["multi_path"]
            ps = result.records["path_selection"]
            assert all(a.objective_s <= b.objective_s for a, b in zip(mp, ps))

    def test_reject_mode_aborts_with_interval_index(self, make_config):
        tight = tuple(
            dataclasses.replace(t, latency_constraint_s=1e-9)
            for t in scenario_preset("scenario1", 100e6).traffic_types
        )
        cfg = make_config(
            sim_time=5.0,
            traffic_types=tight,
            solver=SolverSettings(feasibility_mode="reject"),
        )
        with pytest.raises(InfeasibleIntervalError) as excinfo:
            run(cfg)
        assert excinfo.value.interval == 0

    def test_replay_reproduces_run(self, make_config, tmp_path):
        cfg = make_config(sim_time=20.0, seed=16)
        original = run(cfg)
        path = tmp_path / "samples.csv"
        write_samples_csv(original.samples, path)
        samples = read_samples_csv(path, len(cfg.traffic_types))
        replayed = run(cfg, samples=samples)
        assert replayed.records == original.records

    def test_replay_length_mismatch(self, make_config):
        cfg = make_config(sim_time=20.0, seed=16)
        original = run(cfg)
        with pytest.raises(ValueError):
            run(cfg, samples=original.samples[:-1])


class TestSampleDraws:
    def test_positions_enter_samples(self, make_config):
        cfg = make_config(sim_time=20.0, seed=3)
        traj = build_trajectory(cfg, np.random.default_rng(0))
        samples = draw_samples(cfg, traj)
        assert tuple(s.ue_position for s in samples) == traj.positions

    def test_gbr_within_supports(self, make_config):
        cfg = make_config(sim_time=20.0, seed=3)
        traj = build_trajectory(cfg, np.random.default_rng(0))
        for s in draw_samples(cfg, traj):
            for i, t in enumerate(cfg.traffic_types):
                assert t.gbr_path1_range_bps[0] <= s.gbr_path1_bps[i] <= t.gbr_path1_range_bps[1]
                assert t.gbr_path2_range_bps[0] <= s.gbr_path2_bps[i] <= t.gbr_path2_range_bps[1]


class TestSweep:
    def test_bandwidth_sweep_shapes(self, make_config):
        cfg = make_config(sim_time=15.0, seed=4)
        rows = sweep(cfg, "bandwidth", [10e6, 50e6, 100e6])
        assert [v for v, _ in rows] == [10e6, 50e6, 100e6]
        for _, summary in rows:
            assert set(summary.solutions) == set(cfg.solutions)
            for sol in summary.solutions.values():
                assert len(sol.per_traffic) == 1  # single-flow sweep workload

    def test_bandwidth_monotone_per_solution(self, make_config):
        cfg = make_config(sim_time=15.0, seed=4)
        rows = sweep(cfg, "bandwidth", [10e6, 50e6, 100e6])
        for name in cfg.solutions:
            means = [s.solutions[name].per_traffic[0].mean_instant_latency_s for _, s in rows]
            assert means[0] > means[1] > means[2]

    def test_packet_size_close_to_linear(self, make_config):
        cfg = make_config(sim_time=15.0, seed=4)
        sizes = [100.0, 800.0, 1500.0]
        rows = sweep(cfg, "packet_size", sizes)
        for name in cfg.solutions:
            y = np.array([s.solutions[name].per_traffic[0].mean_instant_latency_s for _, s in rows])
            coef = np.polyfit(np.array(sizes), y, 1)
            fit = np.polyval(coef, np.array(sizes))
            assert np.max(np.abs(fit - y) / y) < 0.05

    def test_distance_sweep_forces_fixed_position(self, make_config):
        cfg = make_config("scenario2", sim_time=10.0, seed=4)
        rows = sweep(cfg, "distance_to_bs2", [50.0, 100.0])
        assert len(rows) == 2

    def test_distance_monotone_for_single_path_2(self, make_config):
        cfg = make_config("scenario2", sim_time=15.0, seed=4)
        rows = sweep(cfg, "distance_to_bs2", [25.0, 100.0, 175.0, 250.0])
        means = [s.solutions["single_path_2"].per_traffic[0].mean_instant_latency_s for _, s in rows]
        assert all(a <= b for a, b in zip(means, means[1:]))

    def test_unknown_parameter(self, make_config):
        cfg = make_config(sim_time=10.0)
        with pytest.raises(ValueError):
            sweep(cfg, "frequency", [1e9])

    def test_sweep_traffic_profile(self):
        assert SWEEP_TRAFFIC.packet_size_bits == 4000
        assert SWEEP_TRAFFIC.mean_arrival_rate_pps == 50.0
