import dataclasses

import pytest

from mpsplit import run, scenario_preset


@pytest.fixture
def make_config():
    """Factory for short test configs derived from the scenario presets."""

    def _make(scenario="scenario1", bandwidth=100e6, seed=1, sim_time=25.0, **kw):
        cfg = scenario_preset(scenario, bandwidth)
        return dataclasses.replace(cfg, simulation_time_s=sim_time, rng_seed=seed, **kw)

    return _make


@pytest.fixture(scope="session")
def scenario1_full_run():
    """One full-length scenario-1 run shared by the slower statistics tests."""
    cfg = dataclasses.replace(scenario_preset("scenario1", 100e6), rng_seed=3)
    return run(cfg)
