import cmath
import math

import numpy as np
import pytest

import ifgauss as ig
from ifgauss.errors import ParameterDomainError

from conftest import fd_bundle, preset_models, random_atomic_measure


class TestEvalCov:
    def test_single_atom_fourier_sum(self):
        measure = ig.SpectralAtomMeasure((ig.SpectralAtom(2.0, 2.0, 1.0 + 0j),))
        model = ig.AtomicSpectralModel(measure)
        assert ig.eval_cov(model, 1.0, 0.0) == pytest.approx(cmath.exp(2j), abs=1e-15)

    def test_two_tone_diagonal_power(self):
        model = ig.TwoToneModel(1.0, 3.0, 0.0)
        for t in (-2.0, 0.0, 0.9):
            assert ig.eval_cov(model, t, t) == pytest.approx(2.0 + 0j, abs=1e-14)

    def test_rank_one_kernel(self):
        model = ig.rank_one_chirp(amplitude=1.3, sigma=2.0, omega0=1.0)
        t, s = 0.4, -1.1
        expected = 2.0 * model.g(t) * np.conj(model.g(s))
        assert ig.eval_cov(model, t, s) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("model", preset_models())
    def test_conjugate_symmetry(self, model, rng):
        for _ in range(8):
            t, s = rng.uniform(-3, 3, size=2)
            r_ts = ig.eval_cov(model, t, s)
            r_st = ig.eval_cov(model, s, t)
            assert r_ts == pytest.approx(np.conj(r_st), abs=1e-12 * (1 + abs(r_ts)))

    @pytest.mark.parametrize("model", preset_models())
    def test_cauchy_schwarz(self, model, rng):
        for _ in range(8):
            t, s = rng.uniform(-3, 3, size=2)
            lhs = abs(ig.eval_cov(model, t, s)) ** 2
            rhs = ig.eval_cov(model, t, t).real * ig.eval_cov(model, s, s).real
            assert lhs <= rhs * (1 + 1e-12) + 1e-15

    def test_rank_one_cauchy_schwarz_equality(self, rng):
        model = ig.rank_one_chirp(amplitude=1.1, sigma=1.4, omega0=0.5, chirp=0.3)
        for _ in range(8):
            t, s = rng.uniform(-3, 3, size=2)
            lhs = abs(ig.eval_cov(model, t, s)) ** 2
            rhs = ig.eval_cov(model, t, t).real * ig.eval_cov(model, s, s).real
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestDerivatives:
    def test_two_tone_uncorrelated_values(self):
        bundle = ig.eval_cov_derivs(ig.TwoToneModel(1.0, 3.0, 0.0), 0.7)
        assert bundle.r_xx == pytest.approx(1.0, abs=1e-15)
        assert bundle.d1_r_x == pytest.approx(0.0, abs=1e-15)
        assert bundle.d11_22_r_x == pytest.approx(5.0, abs=1e-14)
        assert bundle.d1_r_yx == pytest.approx(2.0, abs=1e-14)

    def test_locally_stationary_closed_forms(self):
        alpha, beta = 0.5, 2.0
        model = ig.LocallyStationaryModel(alpha, beta)
        for t in (-1.3, 0.0, 0.8):
            bundle = ig.eval_cov_derivs(model, t)
            e = math.exp(-2 * alpha * t * t)
            assert bundle.d1_r_x == pytest.approx(-2 * alpha * t * e, rel=1e-13, abs=1e-15)
            assert bundle.d11_22_r_x == pytest.approx(((beta - alpha) + 4 * alpha**2 * t**2) * e, rel=1e-13)

    def test_wss_first_slot_derivative_is_exactly_zero(self):
        for model in (ig.wss_cosine(1.0, 1.0), ig.wss_gaussian(2.0, 0.5), ig.wss_two_tone(1.0, 3.0)):
            for t in (-5.0, 0.0, 2.2):
                assert ig.eval_cov_derivs(model, t).d1_r_x == 0.0

    @pytest.mark.parametrize("model", preset_models())
    def test_analytic_matches_finite_differences(self, model):
        for t in (-1.7, 0.0, 0.6, 2.4):
            bundle = ig.eval_cov_derivs(model, t)
            got = (bundle.r_xx, bundle.d1_r_x, bundle.d11_22_r_x, bundle.d1_r_yx)
            want = fd_bundle(model, t)
            scale = 1 + max(abs(v) for v in want)
            for g, w in zip(got, want):
                assert abs(g - w) <= 1e-6 * scale

    @pytest.mark.parametrize("model", preset_models())
    def test_derivative_power_nonnegative(self, model, rng):
        for t in rng.uniform(-3, 3, size=6):
            assert ig.eval_cov_derivs(model, float(t)).d11_22_r_x >= -1e-14

    def test_numeric_cov_matches_analytic_model(self):
        alpha, beta = 0.5, 2.0
        analytic = ig.LocallyStationaryModel(alpha, beta)

        def r_x(t, s):
            return math.exp(-2 * alpha * ((t + s) / 2) ** 2 - beta / 2 * (t - s) ** 2)

        numeric = ig.NumericCovModel(r_x=r_x, r_yx=lambda t, s: 0.0)
        for t in (-1.0, 0.3, 2.0):
            got = ig.eval_cov_derivs(numeric, t)
            want = ig.eval_cov_derivs(analytic, t)
            assert got.d1_r_x == pytest.approx(want.d1_r_x, rel=1e-7, abs=1e-10)
            assert got.d11_22_r_x == pytest.approx(want.d11_22_r_x, rel=1e-6)


class TestSpectralMeasure:
    def test_single_atom_lag_kernel(self):
        measure = ig.SpectralAtomMeasure((ig.SpectralAtom(1.5, 1.5, 1.0 + 0j),))
        t, s = 0.8, -0.4
        assert ig.spectral_to_cov(measure, t, s) == pytest.approx(cmath.exp(1j * 1.5 * (t - s)), abs=1e-15)

    def test_two_tone_atoms_at_origin(self):
        c = 0.5 + 0.2j
        measure = ig.TwoToneModel(1.0, 3.0, c).spectral_measure()
        assert ig.spectral_to_cov(measure, 0.0, 0.0) == pytest.approx(2 + 2 * c.real, abs=1e-14)
        model = ig.AtomicSpectralModel(measure)
        direct = ig.TwoToneModel(1.0, 3.0, c)
        for t, s in ((0.0, 0.0), (1.2, -0.3)):
            assert ig.eval_cov(model, t, s) == pytest.approx(ig.eval_cov(direct, t, s), abs=1e-13)

    def test_empty_measure_is_zero_process(self):
        measure = ig.SpectralAtomMeasure(())
        assert ig.spectral_to_cov(measure, 1.0, 2.0) == 0j

    def test_hermitian_pairing_required(self):
        with pytest.raises(ParameterDomainError):
            ig.SpectralAtomMeasure((ig.SpectralAtom(1.0, 3.0, 0.5 + 0j),))

    def test_diagonal_atom_must_be_real(self):
        with pytest.raises(ParameterDomainError):
            ig.SpectralAtomMeasure((ig.SpectralAtom(1.0, 1.0, 0.5 + 0.1j),))

    def test_weight_matrix_must_be_psd(self):
        atoms = (
            ig.SpectralAtom(0.0, 0.0, 1.0 + 0j),
            ig.SpectralAtom(1.0, 1.0, 1.0 + 0j),
            ig.SpectralAtom(0.0, 1.0, 2.0 + 0j),
            ig.SpectralAtom(1.0, 0.0, 2.0 + 0j),
        )
        with pytest.raises(ParameterDomainError):
            ig.SpectralAtomMeasure(atoms)

    def test_moment_order_one(self):
        single = ig.SpectralAtomMeasure((ig.SpectralAtom(0.0, 0.0, 1.0 + 0j),))
        assert ig.spectral_moment_order_one(single) == pytest.approx(1.0)
        two_tone = ig.TwoToneModel(1.0, 3.0, 0.0).spectral_measure()
        assert ig.spectral_moment_order_one(two_tone) == pytest.approx(12.0)
        assert ig.spectral_moment_order_one(ig.SpectralAtomMeasure(())) == 0.0


class TestProperness:
    @pytest.mark.parametrize("model", preset_models())
    def test_presets_are_proper(self, model):
        report = ig.check_properness(model, np.linspace(-2, 2, 7))
        assert report.passed
        assert report.max_violation <= 1e-12

    def test_even_cross_covariance_is_flagged(self):
        bad = ig.NumericCovModel(r_x=lambda t, s: math.exp(-((t - s) ** 2)), r_yx=lambda t, s: math.cos(t - s))
        report = ig.check_properness(bad, np.linspace(-2, 2, 5))
        assert not report.passed
        assert report.max_antisymmetry_violation > 0.5

    def test_rank_one_on_small_grid(self):
        model = ig.rank_one_chirp(omega0=1.0, chirp=0.4)
        report = ig.check_properness(model, np.linspace(-1, 1, 5))
        assert report.max_violation <= 1e-12

    def test_empty_grid_rejected(self):
        with pytest.raises(ParameterDomainError):
            ig.check_properness(ig.TwoToneModel(1.0, 3.0, 0.0), [])


class TestPsdSpotcheck:
    def test_two_tone_passes(self):
        report = ig.psd_spotcheck(ig.TwoToneModel(1.0, 3.0, 0.3 + 0.1j), np.linspace(-2, 2, 8))
        assert report.passed

    def test_invalid_locally_stationary_fails(self):
        report = ig.psd_spotcheck(ig.LocallyStationaryModel(1.0, 0.5), np.linspace(-2, 2, 12))
        assert not report.passed

    def test_rank_one_passes_with_low_rank(self):
        report = ig.psd_spotcheck(ig.rank_one_chirp(omega0=2.0), np.linspace(-2, 2, 10))
        assert report.passed
        assert report.rank <= 2

    def test_grid_size_limit(self):
        with pytest.raises(ParameterDomainError):
            ig.psd_spotcheck(ig.TwoToneModel(1.0, 3.0, 0.0), np.linspace(-2, 2, 65))


class TestModelValidation:
    def test_two_tone_needs_distinct_tones(self):
        with pytest.raises(ParameterDomainError):
            ig.TwoToneModel(1.0, 1.0, 0.0)

    def test_two_tone_needs_subunit_correlation(self):
        with pytest.raises(ParameterDomainError):
            ig.TwoToneModel(1.0, 3.0, 1.0)

    def test_locally_stationary_needs_nonnegative_rates(self):
        with pytest.raises(ParameterDomainError):
            ig.LocallyStationaryModel(-0.1, 1.0)

    def test_rank_one_needs_positive_power(self):
        with pytest.raises(ParameterDomainError):
            ig.rank_one_chirp(x_power=0.0)

    def test_random_atomic_measures_are_valid(self, rng):
        for k in (2, 3, 5):
            measure = random_atomic_measure(rng, k)
            model = ig.AtomicSpectralModel(measure)
            report = ig.psd_spotcheck(model, np.linspace(-1, 1, 6))
            assert report.passed
