import csv
import filecmp

import pytest

from mpsplit.cli import main

FAST = ["--set", "run.simulation_time_s=10"]


class TestRun:
    def test_preset_run_writes_outputs(self, tmp_path, capsys):
        out = tmp_path / "results"
        code = main(
            ["run", "--preset", "scenario1", "--bandwidth", "100e6", "--seed", "42", "--out", str(out)]
            + FAST
        )
        assert code == 0
        assert (out / "summary.json").exists()
        assert (out / "records" / "records.csv").exists()
        assert "multi_path" in capsys.readouterr().out

    def test_identical_invocations_identical_outputs(self, tmp_path):
        args = ["run", "--preset", "scenario2", "--seed", "7"] + FAST
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        files = [
            "summary.json",
            "records/records.csv",
            "records/decisions.csv",
            "records/samples.csv",
            "records/trajectory.csv",
            "cdf/cdf.csv",
        ]
        for rel in files:
            assert filecmp.cmp(out_a / rel, out_b / rel, shallow=False), rel

    def test_config_file_run(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("[radio]\ntotal_bandwidth_hz = 50e6\n[run]\nsimulation_time_s = 10\n")
        out = tmp_path / "results"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0

    def test_seed_flag_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MPSPLIT_SEED", "5")
        out = tmp_path / "r"
        assert main(["run", "--preset", "scenario1", "--seed", "9", "--out", str(out)] + FAST) == 0
        import json

        assert json.loads((out / "manifest.json").read_text())["seed"] == 9


class TestValidate:
    def test_valid_config(self, tmp_path, capsys):
        cfg = tmp_path / "ok.cfg"
        cfg.write_text("[radio]\ntotal_bandwidth_hz = 10e6\n")
        assert main(["validate", "--config", str(cfg)]) == 0
        assert "ok" in capsys.readouterr().out

    def test_invalid_config_exits_3_with_field(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("[traffic.1]\ngbr_path1_bps = 0, 1e8\n")
        assert main(["validate", "--config", str(cfg)]) == 3
        assert "gbr_path1_bps" in capsys.readouterr().err

    def test_unknown_override_exits_3(self, tmp_path, capsys):
        assert main(["validate", "--preset", "scenario1", "--set", "radio.nope=1"]) == 3
        assert "nope" in capsys.readouterr().err

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["validate"])  # neither --config nor --preset
        assert excinfo.value.code == 2


class TestSweepCommand:
    def test_bandwidth_sweep(self, tmp_path):
        out = tmp_path / "sweep"
        code = main(
            [
                "sweep",
                "--preset",
                "scenario2",
                "--param",
                "bandwidth",
                "--values",
                "10e6,50e6,100e6",
                "--seed",
                "3",
                "--out",
                str(out),
            ]
            + FAST
        )
        assert code == 0
        with open(out / "sweep.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert {float(r["value"]) for r in rows} == {10e6, 50e6, 100e6}
        assert {r["solution"] for r in rows} == {
            "multi_path",
            "single_path_1",
            "single_path_2",
            "path_selection",
        }


class TestReplay:
    def test_replay_round_trip(self, tmp_path):
        out1 = tmp_path / "orig"
        assert main(["run", "--preset", "scenario1", "--seed", "4", "--out", str(out1)] + FAST) == 0
        out2 = tmp_path / "replayed"
        code = main(
            [
                "replay",
                "--preset",
                "scenario1",
                "--seed",
                "4",
                "--samples",
                str(out1 / "records" / "samples.csv"),
                "--out",
                str(out2),
            ]
            + FAST
        )
        assert code == 0
        assert filecmp.cmp(
            out1 / "records" / "records.csv", out2 / "records" / "records.csv", shallow=False
        )


class TestOracleCheck:
    def test_small_suite_passes(self, capsys):
        code = main(["oracle-check", "--instances", "25", "--power-points", "2000", "--seed", "1"])
        assert code == 0
        assert "PASS" in capsys.readouterr().out
