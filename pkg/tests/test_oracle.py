import numpy as np
import pytest

from helpers import random_valid_matrix
from selfconf import (
    LimitBranch,
    NoConvergence,
    SelfConfidenceProfile,
    best_response,
    centrality,
    estimation_costs,
    grid_best_response,
    limit_matrix,
    opinion_rollout,
    optimal_weights,
    power_limit,
    validate_network,
)

BENCH_FLOOR = 0.027214805890055822


class TestPowerLimit:
    def test_matches_closed_form_consensus(self, net4, pi4, rng_factory):
        rng = rng_factory(910)
        for _ in range(20):
            z = SelfConfidenceProfile(rng.random(4) * 0.98)
            H_pow = power_limit(net4, z)
            H_cf = limit_matrix(net4, pi4, z)
            assert H_pow.branch is LimitBranch.CONSENSUS
            np.testing.assert_allclose(H_pow.H, H_cf.H, atol=1e-10)

    def test_matches_closed_form_absorption(self, net4, pi4, rng_factory):
        rng = rng_factory(911)
        for _ in range(20):
            z = rng.random(4) * 0.9
            z[rng.integers(0, 4)] = 1.0
            prof = SelfConfidenceProfile(z)
            H_pow = power_limit(net4, prof)
            H_cf = limit_matrix(net4, pi4, prof)
            assert H_pow.branch is LimitBranch.ABSORPTION
            np.testing.assert_allclose(H_pow.H, H_cf.H, atol=1e-10)

    def test_random_networks(self, rng_factory):
        rng = rng_factory(912)
        for _ in range(8):
            n = int(rng.integers(3, 7))
            net = validate_network(random_valid_matrix(rng, n))
            pi = centrality(net)
            z = SelfConfidenceProfile(rng.random(n) * 0.95)
            np.testing.assert_allclose(
                power_limit(net, z).H, limit_matrix(net, pi, z).H, atol=1e-10
            )

    def test_budget_exhaustion(self, net4):
        # one squaring is never enough at this tolerance
        z = SelfConfidenceProfile(np.full(4, 0.5))
        with pytest.raises(NoConvergence):
            power_limit(net4, z, tol=1e-15, max_doublings=1)


class TestGridBestResponse:
    def test_matches_formula_origin(self, net4, pi4, sig4):
        z0 = SelfConfidenceProfile(np.zeros(4))
        for k in range(4):
            formula = best_response(net4, pi4, sig4, z0, k).value
            grid = grid_best_response(net4, sig4, z0, k)
            assert abs(formula - grid) <= 0.001

    def test_stubborn_opponent_forces_one(self, net4, sig4):
        # agent 2 stubborn makes z_0 = 1 the unique grid optimum
        z = SelfConfidenceProfile(np.array([0.3, 0.4, 1.0, 0.2]))
        assert grid_best_response(net4, sig4, z, 0) == 1.0

    def test_cheap_stubborn_opponent_stays_off_one(self, net4, sig4):
        # cost is flat on [0, 1) up to power-iteration noise and jumps at 1,
        # so the only reliable fact is that 1 is never selected
        z = SelfConfidenceProfile(np.array([0.1, 0.2, 0.6, 1.0]))
        assert grid_best_response(net4, sig4, z, 2) < 1.0

    def test_validation(self, net4, sig4):
        z = SelfConfidenceProfile(np.zeros(4))
        with pytest.raises(ValueError):
            grid_best_response(net4, sig4, z, 0, grid_step=0.0)

    def test_coarse_grid(self, net4, pi4, sig4):
        z0 = SelfConfidenceProfile(np.zeros(4))
        formula = best_response(net4, pi4, sig4, z0, 3).value
        grid = grid_best_response(net4, sig4, z0, 3, grid_step=0.05)
        assert abs(formula - grid) <= 0.05


class TestOpinionRollout:
    def test_matches_closed_form_costs(self, net4, pi4, sig4, ray4):
        z = ray4.profile_at(ray4.alpha_max / 2.0)
        roll = opinion_rollout(net4, z, sig4, samples=20_000, seed=3)
        closed = estimation_costs(limit_matrix(net4, pi4, z), sig4).upsilon
        se = closed * np.sqrt(2.0 / (roll.samples - 1))
        assert np.all(np.abs(roll.empirical_variances - closed) <= 4.0 * se)

    def test_ray_profile_approaches_floor(self, net4, sig4, ray4):
        z = ray4.profile_at(ray4.alpha_max / 2.0)
        roll = opinion_rollout(net4, z, sig4, samples=20_000, seed=4)
        se = BENCH_FLOOR * np.sqrt(2.0 / (roll.samples - 1))
        assert np.all(np.abs(roll.empirical_variances - BENCH_FLOOR) <= 4.0 * se)

    def test_theta_invariance(self, net4, sig4, ray4):
        z = ray4.profile_at(10.0)
        a = opinion_rollout(net4, z, sig4, theta=0.0, samples=500, seed=7)
        b = opinion_rollout(net4, z, sig4, theta=42.0, samples=500, seed=7)
        np.testing.assert_allclose(
            a.empirical_variances, b.empirical_variances, rtol=1e-7, atol=1e-12
        )

    def test_seed_reproducibility(self, net4, sig4):
        z = SelfConfidenceProfile(np.full(4, 0.5))
        a = opinion_rollout(net4, z, sig4, samples=100, seed=11)
        b = opinion_rollout(net4, z, sig4, samples=100, seed=11)
        assert np.array_equal(a.empirical_variances, b.empirical_variances)
        c = opinion_rollout(net4, z, sig4, samples=100, seed=12)
        assert not np.array_equal(a.empirical_variances, c.empirical_variances)

    def test_stubborn_agent_keeps_raw_noise(self, net4, sig4):
        z = SelfConfidenceProfile(np.array([0.2, 0.3, 1.0, 0.4]))
        roll = opinion_rollout(net4, z, sig4, samples=50_000, seed=5)
        target = float(sig4.sigma2[2])
        se = target * np.sqrt(2.0 / (roll.samples - 1))
        # every agent absorbs agent 2's measurement
        assert np.all(np.abs(roll.empirical_variances - target) <= 4.0 * se)

    def test_zero_horizon_returns_measurement_noise(self, net4, sig4):
        z = SelfConfidenceProfile(np.full(4, 0.5))
        roll = opinion_rollout(net4, z, sig4, samples=200_000, horizon=0, seed=6)
        np.testing.assert_allclose(
            roll.empirical_variances, sig4.sigma2, rtol=0.05
        )

    def test_input_validation(self, net4, sig4):
        z = SelfConfidenceProfile(np.full(4, 0.5))
        with pytest.raises(ValueError):
            opinion_rollout(net4, z, sig4, samples=0)
        with pytest.raises(ValueError):
            opinion_rollout(net4, z, sig4, horizon=-1)

    def test_optimal_weights_floor_consistency(self, sig4):
        # the rollout target used above is the same floor optimal_weights reports
        assert optimal_weights(sig4).cost_floor == pytest.approx(BENCH_FLOOR, abs=1e-18)
