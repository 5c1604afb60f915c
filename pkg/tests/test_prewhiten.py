"""Tests for the lag-1 prewhitening procedure."""

import numpy as np
import pytest

from pettitt import (
    BootstrapConfig,
    bias_corrected_rho,
    lag1_autocorr,
    prewhiten_pipeline,
    remove_step,
)
from pettitt.errors import DegenerateSeriesError, PrewhiteningSingularityError

from oracles import brute_lag1


def ar1_series(rng, n, coeff, sd=1.0):
    noise = rng.normal(0.0, sd, n + 50)
    x = np.empty(n + 50)
    x[0] = noise[0]
    for t in range(1, n + 50):
        x[t] = coeff * x[t - 1] + noise[t]
    return x[50:]  # discard burn-in


class TestLag1Autocorr:
    def test_hand_value(self):
        assert lag1_autocorr([1, 2, 3, 4]) == pytest.approx(1 / 3, abs=1e-4)

    def test_constant_series_raises(self):
        with pytest.raises(DegenerateSeriesError):
            lag1_autocorr([3.0] * 6)

    def test_alternating_series(self):
        values = [1.0, -1.0] * 10
        assert lag1_autocorr(values) == pytest.approx(-1.0, abs=1e-12)

    def test_matches_loop_evaluation(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            values = rng.normal(size=rng.integers(4, 40)).tolist()
            assert lag1_autocorr(values) == pytest.approx(brute_lag1(values), rel=1e-10)

    def test_white_noise_near_zero(self):
        rng = np.random.default_rng(22)
        abs_rhos = [
            abs(lag1_autocorr(rng.normal(size=1000))) for _ in range(1000)
        ]
        assert np.mean(abs_rhos) < 0.05


class TestBiasCorrectedRho:
    def test_vanishing_first_factor(self):
        for n in (4, 10, 53):
            assert bias_corrected_rho(-1.0 / n, n) == pytest.approx(0.0, abs=1e-15)

    def test_formula_value(self):
        assert bias_corrected_rho(0.0, 53) == pytest.approx(0.02)

    def test_small_t_can_exceed_one(self):
        assert bias_corrected_rho(1 / 3, 4) == pytest.approx(2.3333, abs=1e-4)

    def test_rejects_small_t(self):
        with pytest.raises(ValueError):
            bias_corrected_rho(0.2, 3)

    def test_converges_to_rho(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            rho = rng.uniform(-0.95, 0.95)
            n = int(rng.integers(10, 5000))
            bound = (1 + 3 * abs(rho) + 3 / n) / (n - 3)
            assert abs(bias_corrected_rho(rho, n) - rho) <= bound + 1e-12


class TestRemoveStep:
    def test_zero_delta_is_identity(self):
        values = [1.0, 5.0, 2.0, 8.0]
        assert np.array_equal(remove_step(values, 2, 0.0), values)

    def test_removes_step(self):
        out = remove_step([10, 10, 20, 20], 2, 10.0)
        assert np.allclose(out, [10, 10, 10, 10])

    def test_inverse_pair(self):
        rng = np.random.default_rng(24)
        values = rng.gamma(5.0, 20.0, 30)
        roundtrip = remove_step(remove_step(values, 11, 7.3), 11, -7.3)
        assert np.allclose(roundtrip, values, rtol=1e-12)

    def test_tau_out_of_range(self):
        with pytest.raises(ValueError):
            remove_step([1, 2, 3], 0, 1.0)
        with pytest.raises(ValueError):
            remove_step([1, 2, 3], 3, 1.0)


class TestPipeline:
    config = BootstrapConfig(200, 77)

    def test_stops_early_without_change(self):
        rng = np.random.default_rng(0)
        values = rng.gamma(100.0, 1.0, 60)  # i.i.d., no step
        rep = prewhiten_pipeline(values, 0.05, self.config)
        assert rep.stopped_early
        assert rep.delta is None
        assert rep.final_classical is None
        assert rep.final_bootstrap is None
        # both p values on the original data are still reported
        assert rep.initial_classical.p_value >= 0.05
        assert rep.initial_bootstrap.p_value > 0.0

    def test_detects_step_under_ar1(self):
        detected = located = 0
        runs = 60
        for seed in range(runs):
            rng = np.random.default_rng(1000 + seed)
            n, true_tau = 85, 42
            base = ar1_series(rng, n, 0.4, sd=10.0) + 100.0
            base[true_tau:] += 40.0
            rep = prewhiten_pipeline(base, 0.05, BootstrapConfig(200, seed))
            assert not rep.stopped_early
            if rep.final_classical.rejected and rep.final_bootstrap.rejected:
                detected += 1
            if abs(rep.initial_classical.change_index - true_tau) <= 3:
                located += 1
        assert detected >= 0.9 * runs
        assert located >= 0.9 * runs

    def test_recombined_length_and_alignment(self):
        rng = np.random.default_rng(26)
        values = np.concatenate([rng.normal(100, 2, 40), rng.normal(140, 2, 45)])
        rep = prewhiten_pipeline(values, 0.05, self.config)
        assert rep.prewhitened.shape == (values.size - 1,)
        tau = rep.initial_classical.change_index
        assert abs(rep.final_classical.change_index - (tau - 1)) <= 2

    def test_near_zero_rho_recombination(self):
        rng = np.random.default_rng(27)
        n = 5000
        values = np.concatenate(
            [rng.normal(100, 2, n // 2), rng.normal(140, 2, n // 2)]
        )
        rep = prewhiten_pipeline(values, 0.05, self.config)
        # with rho* ~ 0 the recombined series reproduces step + residuals
        expected = rep.delta * (np.arange(1, n) > rep.initial_classical.change_index - 1)
        stepless = values.copy()
        stepless[rep.initial_classical.change_index:] -= rep.delta
        expected = expected + stepless[1:] / (1 - rep.rho_star) \
            - rep.rho_star * stepless[:-1] / (1 - rep.rho_star)
        assert np.allclose(rep.prewhitened, expected, rtol=1e-10)
        assert abs(rep.rho_star) < 0.05

    def test_singularity_guard(self):
        # persistent residual after step removal at tiny T drives rho* past 1
        values = np.array([-0.215, -1.454, -2.198, -2.728, -3.064])
        with pytest.raises(PrewhiteningSingularityError):
            prewhiten_pipeline(values, 0.9, self.config)

    def test_requires_min_length(self):
        with pytest.raises(ValueError):
            prewhiten_pipeline([1.0, 2.0, 3.0], 0.05, self.config)

    def test_bootstrap_gate(self):
        rng = np.random.default_rng(28)
        values = rng.gamma(100.0, 1.0, 40)
        rep_c = prewhiten_pipeline(values, 0.05, self.config, gate="classical")
        rep_b = prewhiten_pipeline(values, 0.05, self.config, gate="bootstrap")
        assert rep_c.initial_classical == rep_b.initial_classical
        with pytest.raises(ValueError):
            prewhiten_pipeline(values, 0.05, self.config, gate="other")
