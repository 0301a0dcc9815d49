import csv

import pytest

from mpsplit_plots.schema import SchemaError, read_cdf, read_decisions, read_sweep


class TestCdf:
    def test_reads_all_curves(self, cdf_csv):
        curves = read_cdf(cdf_csv)
        assert len(curves.curves) == 8
        assert curves.traffics() == [1, 2]

    def test_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("solution,traffic,latency,cum_prob\nmulti_path,1,0.5,1.0\n")
        with pytest.raises(SchemaError, match="header"):
            read_cdf(path)

    def test_rejects_unsorted_latencies(self, tmp_path):
        path = tmp_path / "bad.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["solution", "traffic", "latency_ms", "cum_prob"])
            writer.writerow(["multi_path", 1, 2.0, 0.5])
            writer.writerow(["multi_path", 1, 1.0, 1.0])
        with pytest.raises(SchemaError, match="sorted"):
            read_cdf(path)

    def test_rejects_empty(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("solution,traffic,latency_ms,cum_prob\n")
        with pytest.raises(SchemaError, match="no data"):
            read_cdf(path)


class TestDecisions:
    def test_reads_multi_path_trace(self, decisions_csv):
        trace = read_decisions(decisions_csv)
        assert trace.intervals == list(range(20))
        assert set(trace.alphas) == {1, 2}
        assert len(trace.p1_dbm) == 20

    def test_ratio_bounds_enforced(self, tmp_path):
        path = tmp_path / "bad.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["interval", "solution", "alpha_t1", "p1_dbm", "p2_dbm",
                 "p1_watts", "p2_watts", "objective_ms", "feasible"]
            )
            writer.writerow([0, "multi_path", 1.4, 20.0, 19.9, 0.1, 0.1, 2.0, "true"])
        with pytest.raises(SchemaError, match="outside"):
            read_decisions(path)

    def test_missing_solution(self, decisions_csv):
        with pytest.raises(SchemaError, match="single_path_1"):
            read_decisions(decisions_csv, solution="single_path_1")

    def test_rejects_missing_alpha_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("interval,solution,p1_dbm,p2_dbm,p1_watts,p2_watts,objective_ms,feasible\n")
        with pytest.raises(SchemaError, match="header"):
            read_decisions(path)


class TestSweep:
    def test_reads_lines_sorted_by_value(self, sweep_csv):
        table = read_sweep(sweep_csv)
        assert table.parameter == "bandwidth"
        xs, ys = table.lines[("multi_path", 1)]
        assert xs == [10e6, 50e6, 100e6]
        assert ys == sorted(ys, reverse=True)

    def test_rejects_mixed_parameters(self, tmp_path):
        path = tmp_path / "bad.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["parameter", "value", "solution", "traffic", "mean_latency_ms", "deadline_miss_rate"])
            writer.writerow(["bandwidth", 1e7, "multi_path", 1, 3.0, 0.0])
            writer.writerow(["packet_size", 100, "multi_path", 1, 3.0, 0.0])
        with pytest.raises(SchemaError, match="single swept parameter"):
            read_sweep(path)
