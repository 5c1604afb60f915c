"""Tests for the synthetic series generators."""

import numpy as np
import pytest

from pettitt.synth import (
    DistributionSpec,
    GammaParams,
    GumbelParams,
    NormalParams,
    ShiftSpec,
    change_index_for,
    generate_series,
    solve_params,
)


class TestSolveParams:
    def test_gamma_moments(self):
        params = solve_params(DistributionSpec("gamma", 100.0, 0.10))
        assert isinstance(params, GammaParams)
        assert params.shape == pytest.approx(100.0)
        assert params.rate == pytest.approx(1.0)

    def test_gamma_exponential_special_case(self):
        params = solve_params(DistributionSpec("gamma", 100.0, 1.0))
        assert params.shape == pytest.approx(1.0)

    def test_gumbel_moments(self):
        params = solve_params(DistributionSpec("gumbel", 100.0, 0.05))
        assert isinstance(params, GumbelParams)
        assert params.scale == pytest.approx(5.0 * np.sqrt(6.0) / np.pi, rel=1e-10)
        assert params.scale == pytest.approx(3.8985, abs=1e-4)
        assert params.location == pytest.approx(97.7496, abs=1e-3)

    def test_normal_moments(self):
        params = solve_params(DistributionSpec("normal", 100.0, 0.30))
        assert isinstance(params, NormalParams)
        assert params.mean == 100.0
        assert params.sd == pytest.approx(30.0)

    @pytest.mark.parametrize("mean,cv", [(0.0, 0.1), (-1.0, 0.1), (100.0, 0.0)])
    def test_invalid_spec(self, mean, cv):
        with pytest.raises(ValueError):
            DistributionSpec("gamma", mean, cv)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            DistributionSpec("weibull", 100.0, 0.1)


class TestChangeIndex:
    def test_flooring(self):
        assert change_index_for(ShiftSpec(0.1, 0.5), 10) == 5
        assert change_index_for(ShiftSpec(0.1, 0.7), 10) == 7
        assert change_index_for(ShiftSpec(0.1, 0.1), 10) == 1

    def test_clamped_into_valid_range(self):
        assert change_index_for(ShiftSpec(0.1, 0.99), 10) == 9
        assert change_index_for(ShiftSpec(0.1, 0.01), 10) == 1


class TestGenerateSeries:
    @pytest.mark.parametrize("family", ["gamma", "gumbel", "normal"])
    def test_stationary_sample_mean(self, family):
        spec = DistributionSpec(family, 100.0, 0.10)
        values = generate_series(spec, ShiftSpec(0.0, 0.5), 10**6, seed=31)
        assert values.mean() == pytest.approx(100.0, rel=0.005)

    def test_second_segment_mean_shift(self):
        spec = DistributionSpec("gamma", 100.0, 0.05)
        values = generate_series(spec, ShiftSpec(0.10, 0.5), 10**6, seed=32)
        assert values[500_000:].mean() == pytest.approx(110.0, rel=0.005)
        assert values[:500_000].mean() == pytest.approx(100.0, rel=0.005)

    def test_deterministic(self):
        spec = DistributionSpec("gumbel", 100.0, 0.20)
        shift = ShiftSpec(0.05, 0.7)
        a = generate_series(spec, shift, 200, seed=33)
        b = generate_series(spec, shift, 200, seed=33)
        assert np.array_equal(a, b)

    def test_gamma_draws_positive(self):
        spec = DistributionSpec("gamma", 100.0, 0.30)
        values = generate_series(spec, ShiftSpec(0.0, 0.5), 10**5, seed=34)
        assert (values > 0).all()

    def test_normal_negative_fraction_small(self):
        spec = DistributionSpec("normal", 100.0, 0.30)
        values = generate_series(spec, ShiftSpec(0.0, 0.5), 10**6, seed=35)
        assert (values < 0).mean() < 0.001
        # no truncation: negatives do occur at ~3.3 sigma
        assert (values < 0).any()

    def test_shift_mirror_symmetry(self):
        spec = DistributionSpec("normal", 100.0, 0.05)
        up = generate_series(spec, ShiftSpec(0.10, 0.5), 10**5, seed=36)
        down = generate_series(spec, ShiftSpec(-0.10, 0.5), 10**5, seed=36)
        tau = 50_000
        assert up[tau:].mean() - 100.0 == pytest.approx(
            100.0 - down[tau:].mean(), rel=0.02
        )
        assert np.array_equal(up[:tau], down[:tau])

    def test_variance_held_fixed_across_shift(self):
        spec = DistributionSpec("gamma", 100.0, 0.10)
        values = generate_series(spec, ShiftSpec(0.10, 0.5), 10**6, seed=37)
        sd_before = values[:500_000].std()
        sd_after = values[500_000:].std()
        assert sd_after == pytest.approx(sd_before, rel=0.01)
