import math

import numpy as np
import pytest

from mpsplit.channel import LinkState, make_link_state
from mpsplit.config import TrafficTypeSpec
from mpsplit.latency import Decision, evaluate, n3_latency, wireless_latency
from mpsplit.traffic import IntervalSample


def make_sample(arrivals, queued, gbr1, gbr2):
    return IntervalSample(
        arrivals=tuple(arrivals),
        queued=tuple(queued),
        gbr_path1_bps=tuple(gbr1),
        gbr_path2_bps=tuple(gbr2),
        ue_position=(0.0, 0.0),
        shadowing_db=(0.0, 0.0),
    )


def make_spec(bits=800, tmax=0.9):
    return TrafficTypeSpec(
        packet_size_bits=bits,
        mean_arrival_rate_pps=0.0,
        mean_queue_packets=0.0,
        latency_constraint_s=tmax,
        gbr_path1_range_bps=(1e8, 1e8),
        gbr_path2_range_bps=(1e8, 1e8),
    )


class TestWirelessLatency:
    def test_reference_value(self):
        # 110 packets x 800 bits / 95 Mb/s = 0.9263 ms
        assert wireless_latency(1.0, 110, 800, 95e6) == pytest.approx(9.2632e-4, rel=1e-4)

    def test_zero_traffic_on_dead_path(self):
        assert wireless_latency(0.0, 110, 800, 0.0) == 0.0
        assert wireless_latency(0.5, 0, 800, 0.0) == 0.0

    def test_exact_arithmetic(self):
        assert wireless_latency(0.5, 100, 800, 40e6) == pytest.approx(1.0e-3, rel=1e-12)

    def test_traffic_on_dead_path_is_infinite(self):
        assert wireless_latency(0.5, 10, 800, 0.0) == math.inf

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            wireless_latency(1.5, 10, 800, 1e6)
        with pytest.raises(ValueError):
            wireless_latency(0.5, -1, 800, 1e6)
        with pytest.raises(ValueError):
            wireless_latency(0.5, 10, 800, -1.0)


class TestN3Latency:
    def test_reference_value(self):
        assert n3_latency(0.5, 110, 800, 120e6) == pytest.approx(3.6667e-4, rel=1e-4)

    def test_zero_portion(self):
        assert n3_latency(0.0, 12345, 800, 120e6) == 0.0

    def test_exact_arithmetic(self):
        assert n3_latency(1.0, 55, 2400, 200e6) == pytest.approx(6.6e-4, rel=1e-12)

    def test_nonpositive_gbr_rejected(self):
        with pytest.raises(ValueError):
            n3_latency(0.5, 10, 800, 0.0)
        with pytest.raises(ValueError):
            n3_latency(0.5, 10, 800, -5.0)


class TestDecision:
    def test_alpha_range_enforced(self):
        with pytest.raises(ValueError):
            Decision(alphas=(1.2,), p1_watts=0.1, p2_watts=0.1)
        with pytest.raises(ValueError):
            Decision(alphas=(-0.1,), p1_watts=0.1, p2_watts=0.1)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            Decision(alphas=(0.5,), p1_watts=-0.1, p2_watts=0.1)


class TestEvaluate:
    def setup_method(self):
        self.links = (
            make_link_state(50e6, 115.6, 0.0, -174.0),
            make_link_state(50e6, 115.6, 0.0, -174.0),
        )
        self.traffic = [make_spec(800), make_spec(2400, tmax=0.85)]
        self.sample = make_sample([100, 25], [10, 5], [120e6, 210e6], [120e6, 190e6])

    def test_path1_only_boundary(self):
        dec = Decision(alphas=(1.0, 1.0), p1_watts=0.2, p2_watts=0.0)
        rec = evaluate(dec, self.sample, self.links, self.traffic)
        assert rec.total_path2_s == (0.0, 0.0)
        assert rec.instant_s == rec.total_path1_s

    def test_symmetric_paths_balance_exactly(self):
        sample = make_sample([100, 25], [10, 5], [120e6, 200e6], [120e6, 200e6])
        dec = Decision(alphas=(0.5, 0.5), p1_watts=0.1, p2_watts=0.1)
        rec = evaluate(dec, sample, self.links, self.traffic)
        assert rec.total_path1_s == rec.total_path2_s

    def test_objective_is_sum_of_instants(self):
        dec = Decision(alphas=(0.3, 0.7), p1_watts=0.12, p2_watts=0.08)
        rec = evaluate(dec, self.sample, self.links, self.traffic)
        assert rec.objective_s == sum(rec.instant_s)

    def test_totals_decompose(self):
        dec = Decision(alphas=(0.3, 0.7), p1_watts=0.12, p2_watts=0.08)
        rec = evaluate(dec, self.sample, self.links, self.traffic)
        for i in range(2):
            assert rec.total_path1_s[i] == rec.wireless_path1_s[i] + rec.n3_path1_s[i]
            assert rec.total_path2_s[i] == rec.wireless_path2_s[i] + rec.n3_path2_s[i]
            assert rec.instant_s[i] == max(rec.total_path1_s[i], rec.total_path2_s[i])

    def test_infeasible_when_over_deadline(self):
        tight = [make_spec(800, tmax=1e-9), make_spec(2400, tmax=1e-9)]
        dec = Decision(alphas=(0.5, 0.5), p1_watts=0.1, p2_watts=0.1)
        rec = evaluate(dec, self.sample, self.links, tight)
        assert not rec.feasible
        assert rec.deadline_met == (False, False)

    def test_infinity_propagates_to_infeasible(self):
        dec = Decision(alphas=(0.5, 0.5), p1_watts=0.0, p2_watts=0.2)
        rec = evaluate(dec, self.sample, self.links, self.traffic)
        assert rec.total_path1_s[0] == math.inf
        assert not rec.feasible
        assert not math.isnan(rec.objective_s)

    def test_alpha_count_mismatch(self):
        dec = Decision(alphas=(0.5,), p1_watts=0.1, p2_watts=0.1)
        with pytest.raises(ValueError):
            evaluate(dec, self.sample, self.links, self.traffic)

    def test_scaling_in_packet_count(self):
        # every latency is linear in the packet count
        dec = Decision(alphas=(0.3, 0.7), p1_watts=0.12, p2_watts=0.08)
        base = evaluate(dec, self.sample, self.links, self.traffic)
        scaled_sample = make_sample([300, 75], [30, 15], [120e6, 210e6], [120e6, 190e6])
        scaled = evaluate(dec, scaled_sample, self.links, self.traffic)
        for i in range(2):
            assert scaled.instant_s[i] == pytest.approx(3.0 * base.instant_s[i], rel=1e-12)
            assert scaled.total_path1_s[i] == pytest.approx(3.0 * base.total_path1_s[i], rel=1e-12)

    def test_continuous_in_alpha_and_power(self):
        # small perturbations with positive rates move the objective a
        # proportionally small amount
        base = Decision(alphas=(0.4, 0.6), p1_watts=0.12, p2_watts=0.08)
        ref = evaluate(base, self.sample, self.links, self.traffic).objective_s
        for eps in (1e-6, 1e-9):
            nudged = Decision(alphas=(0.4 + eps, 0.6), p1_watts=0.12, p2_watts=0.08)
            delta = abs(evaluate(nudged, self.sample, self.links, self.traffic).objective_s - ref)
            assert delta <= 10.0 * eps * ref / 0.4

    def test_monotone_in_alpha_and_power(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a1, a2 = sorted(rng.uniform(0.05, 0.95, size=2))
            if a1 == a2:
                continue
            d_lo = Decision(alphas=(a1, a1), p1_watts=0.1, p2_watts=0.1)
            d_hi = Decision(alphas=(a2, a2), p1_watts=0.1, p2_watts=0.1)
            r_lo = evaluate(d_lo, self.sample, self.links, self.traffic)
            r_hi = evaluate(d_hi, self.sample, self.links, self.traffic)
            for i in range(2):
                assert r_lo.total_path1_s[i] < r_hi.total_path1_s[i]
                assert r_lo.total_path2_s[i] > r_hi.total_path2_s[i]
        # more path-1 power cannot increase path-1 latency
        for _ in range(50):
            p_lo, p_hi = sorted(rng.uniform(0.01, 0.2, size=2))
            if p_lo == p_hi:
                continue
            r_lo = evaluate(Decision(alphas=(0.5, 0.5), p1_watts=p_lo, p2_watts=0.1), self.sample, self.links, self.traffic)
            r_hi = evaluate(Decision(alphas=(0.5, 0.5), p1_watts=p_hi, p2_watts=0.1), self.sample, self.links, self.traffic)
            for i in range(2):
                assert r_hi.total_path1_s[i] <= r_lo.total_path1_s[i]
