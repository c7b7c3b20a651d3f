import math

import numpy as np
import pytest
import scipy.stats

import ifgauss as ig
from ifgauss.errors import NumericEvaluationError, ParameterDomainError, RegimeError


def params(a, b, c, d):
    return ig.IFParams.from_values(a, b, c, d)


class TestSampleVec4:
    def test_empirical_covariance(self):
        p = params(1.0, 0.0, 0.0, 1.0)
        x = ig.sample_vec4(p, 10**6, 101)
        emp = x.T @ x / len(x)
        assert np.max(np.abs(emp - ig.cov_matrix(p))) <= 5e-3

    def test_structured_zero_pattern(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        n = 4 * 10**5
        x = ig.sample_vec4(p, n, 102)
        emp = x.T @ x / n
        scale = 3 * math.sqrt(p.a * p.d) / math.sqrt(n)
        assert abs(emp[0, 2]) <= 3 * scale
        assert abs(emp[1, 3]) <= 3 * scale

    def test_zero_power_rows_are_exact_zeros(self):
        x = ig.sample_vec4(params(0.0, 0.0, 0.0, 1.0), 10**4, 103)
        assert np.all(x[:, 0] == 0.0)
        assert np.all(x[:, 2] == 0.0)
        assert np.std(x[:, 1]) > 0.9

    def test_seed_repeat_is_bit_identical(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        a = ig.sample_vec4(p, 50_000, 104)
        b = ig.sample_vec4(p, 50_000, 104)
        assert np.array_equal(a, b)

    def test_longer_batch_extends_shorter(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        n1, n2 = (1 << 18) + 50, (1 << 18) + 5000
        short = ig.sample_vec4(p, n1, 105)
        long = ig.sample_vec4(p, n2, 105)
        assert np.array_equal(long[:n1], short)

    def test_indefinite_matrix_rejected(self):
        p = ig.IFParams(a=1.0, b=2.0, c=0.0, d=1.0, delta=-3.0)  # bypasses from_values
        with pytest.raises(NumericEvaluationError):
            ig.sample_vec4(p, 10, 1)

    def test_count_must_be_positive(self):
        with pytest.raises(ParameterDomainError):
            ig.sample_vec4(params(1.0, 0.0, 0.0, 1.0), 0, 1)


class TestSampleIf:
    def test_degenerate_draws_concentrate(self):
        p = params(1.0, 1.0, 0.0, 1.0)
        batch = ig.sample_if(p, 10**5, 106)
        assert batch.n_infinite == 0
        assert np.max(np.abs(batch.finite - 1.0)) <= 1e-9

    def test_zero_power_draws_are_all_infinite(self):
        batch = ig.sample_if(params(0.0, 0.0, 0.0, 1.0), 10**4, 107)
        assert batch.n_infinite == batch.n
        assert np.all(np.isinf(batch.values))
        assert not np.any(np.isnan(batch.values))

    def test_median_matches_center(self):
        p = params(1.0, 0.0, 0.0, 1.0)
        n = 10**6
        batch = ig.sample_if(p, n, 108)
        assert abs(np.median(batch.finite)) <= 3 * 1.2533 / math.sqrt(n)

    def test_no_infinite_draws_with_positive_power(self):
        batch = ig.sample_if(params(1.0, 0.5, 0.3, 2.0), 10**5, 109)
        assert batch.n_infinite == 0

    def test_reproducible(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        a = ig.sample_if(p, 10**4, 110)
        b = ig.sample_if(p, 10**4, 110)
        assert np.array_equal(a.values, b.values)
        assert a.rng_id == ig.RNG_ID


class TestKsDistance:
    def test_self_consistency(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        batch = ig.sample_if(p, 10**6, 111)
        d = ig.ks_distance(batch, lambda y: ig.cdf(p, y))
        assert d < 0.005

    def test_wrong_center_is_far(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        batch = ig.sample_if(p, 10**5, 112)
        shifted = params(1.0, 1.5, 0.3, 3.0)  # center b/a + 1, same delta
        d = ig.ks_distance(batch, lambda y: ig.cdf(shifted, y))
        assert d > 0.3

    def test_matches_scipy(self):
        p = params(1.0, 0.5, 0.3, 2.0)
        batch = ig.sample_if(p, 20_000, 113)
        ours = ig.ks_distance(batch, lambda y: ig.cdf(p, y))
        ref = scipy.stats.kstest(batch.finite, lambda y: ig.cdf(p, y)).statistic
        assert ours == pytest.approx(ref, abs=1e-12)

    def test_empty_batch_rejected(self):
        batch = ig.sample_if(params(0.0, 0.0, 0.0, 1.0), 100, 114)
        with pytest.raises(ParameterDomainError):
            ig.ks_distance(batch, lambda y: y)

    def test_law_match_across_discriminant_scales(self):
        # delta/(a d) of 0.99 and 0.05: tails mild and extreme
        for a, b, c, d in ((1.0, 0.1, 0.0, 1.01), (1.0, 1.2, 0.8, 2.2)):
            p = params(a, b, c, d)
            assert ig.classify_regime(p) is ig.Regime.HEAVY_TAIL
            batch = ig.sample_if(p, 10**6, 115)
            assert ig.ks_distance(batch, lambda y: ig.cdf(p, y)) < 0.005


class TestTailExponent:
    def test_symmetric_law_slope(self):
        p = params(1.0, 0.0, 0.0, 1.0)
        batch = ig.sample_if(p, 10**6, 116)
        assert ig.tail_exponent(batch) == pytest.approx(-2.0, abs=0.2)

    def test_inverse_transform_consistency(self):
        # draws via the analytic quantile, no 4-vector route
        p = params(1.0, 0.5, 0.3, 2.0)
        rng = np.random.default_rng(117)
        values = ig.quantile(p, rng.uniform(1e-12, 1 - 1e-12, size=10**7))
        batch = ig.SampleBatch(117, len(values), values, 0, p)
        assert ig.tail_exponent(batch) == pytest.approx(-2.0, abs=0.05)

    def test_degenerate_has_no_tail(self):
        batch = ig.sample_if(params(1.0, 1.0, 0.0, 1.0), 2 * 10**5, 118)
        with pytest.raises(RegimeError):
            ig.tail_exponent(batch)

    def test_insufficient_draws_rejected(self):
        batch = ig.sample_if(params(1.0, 0.0, 0.0, 1.0), 10**4, 119)
        with pytest.raises(ParameterDomainError):
            ig.tail_exponent(batch)


class TestSimulateTwoTone:
    def test_uncorrelated_weights(self):
        ens = ig.simulate_two_tone(1.0, 3.0, 0.0, [0.0], 10**5, 120)
        x1 = ens.paths[:, 0]  # z(0) = X1 + X2
        assert abs(np.mean(np.abs(x1) ** 2) - 2.0) <= 5 / math.sqrt(ens.m) * 2

    def test_ensemble_covariance_matches_model(self):
        xi, eta, corr = 1.0, 3.0, 0.5 + 0.2j
        model = ig.TwoToneModel(xi, eta, corr)
        tgrid = [0.0, 0.7, 1.9]
        ens = ig.simulate_two_tone(xi, eta, corr, tgrid, 2 * 10**5, 121)
        bound = 5 * 2 / math.sqrt(ens.m)
        for i, t in enumerate(tgrid):
            for j, s in enumerate(tgrid):
                emp = np.mean(ens.paths[:, i] * np.conj(ens.paths[:, j]))
                assert abs(emp - ig.eval_cov(model, t, s)) <= bound

    def test_properness_of_paths(self):
        ens = ig.simulate_two_tone(1.0, 3.0, 0.5, [0.0, 0.8], 2 * 10**5, 122)
        pseudo = np.mean(ens.paths[:, 0] * ens.paths[:, 1])
        assert abs(pseudo) <= 5 * 2 / math.sqrt(ens.m)

    def test_correlation_bound(self):
        with pytest.raises(ParameterDomainError):
            ig.simulate_two_tone(1.0, 3.0, 1.0, [0.0], 10, 1)

    def test_reproducible(self):
        a = ig.simulate_two_tone(1.0, 3.0, 0.3, [0.0, 0.1], 1000, 123)
        b = ig.simulate_two_tone(1.0, 3.0, 0.3, [0.0, 0.1], 1000, 123)
        assert np.array_equal(a.paths, b.paths)


class TestPathIf:
    def test_pure_tone_is_exact(self):
        dt = 1e-3
        t = dt * np.arange(64)
        values = ig.path_if(np.exp(2j * t), dt)
        assert np.max(np.abs(values - 2.0)) <= 1e-9

    def test_single_weight_gives_tone_frequency(self):
        # two-tone realization with the second weight zero
        dt = 1e-3
        t = dt * np.arange(32)
        x1 = 0.3 - 1.1j
        values = ig.path_if(x1 * np.exp(1j * 1.0 * t), dt)
        assert np.max(np.abs(values - 1.0)) <= 1e-9

    def test_zero_sample_flags_gap(self):
        dt = 0.1
        path = np.exp(1j * np.arange(10) * dt)
        path[4] = 0.0
        values = ig.path_if(path, dt)
        assert np.isinf(values[2]) and np.isinf(values[3]) and np.isinf(values[4])
        assert np.isfinite(values[0])

    def test_pooled_against_law(self):
        xi, eta, corr = 1.0, 3.0, 0.5
        dt, m = 1e-3, 2 * 10**4
        ens = ig.simulate_two_tone(xi, eta, corr, [-dt, 0.0, dt], m, 124)
        pooled = np.array([ig.path_if(path, dt)[0] for path in ens.paths])
        p = ig.if_params(ig.TwoToneModel(xi, eta, corr), 0.0)
        batch = ig.SampleBatch(124, m, pooled, int(np.sum(np.isinf(pooled))), p)
        assert ig.ks_distance(batch, lambda y: ig.cdf(p, y)) < 0.03

    def test_short_path_rejected(self):
        with pytest.raises(ParameterDomainError):
            ig.path_if(np.ones(2, dtype=complex), 0.1)
