import csv

import pytest

SOLUTIONS = ("multi_path", "single_path_1", "single_path_2", "path_selection")


@pytest.fixture
def cdf_csv(tmp_path):
    """Hand-built CDF table: 4 solutions x 2 traffics x 5 points."""
    path = tmp_path / "cdf.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["solution", "traffic", "latency_ms", "cum_prob"])
        for s, solution in enumerate(SOLUTIONS):
            for traffic in (1, 2):
                for k in range(5):
                    writer.writerow([solution, traffic, 0.5 + 0.1 * k + 0.2 * s, (k + 1) / 5])
    return path


@pytest.fixture
def decisions_csv(tmp_path):
    path = tmp_path / "decisions.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["interval", "solution", "alpha_t1", "alpha_t2", "p1_dbm", "p2_dbm",
             "p1_watts", "p2_watts", "objective_ms", "feasible"]
        )
        for k in range(20):
            alpha = 0.4 + 0.01 * k
            writer.writerow([k, "multi_path", alpha, 1.0 - alpha, 20.0, 19.9, 0.1, 0.0977, 2.0, "true"])
            writer.writerow([k, "path_selection", 1.0, 1.0, 23.0, "-inf", 0.1995, 0.0, 2.5, "true"])
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["parameter", "value", "solution", "traffic", "mean_latency_ms", "deadline_miss_rate"])
        for v, value in enumerate((10e6, 50e6, 100e6)):
            for s, solution in enumerate(SOLUTIONS):
                writer.writerow(["bandwidth", value, solution, 1, 4.0 - v + 0.3 * s, 0.0])
    return path
