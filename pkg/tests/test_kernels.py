"""Kernel construction, the exact kernel KL, and the complexity bounds."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ridgemdl import (DecayRegime, KernelComplexityInput, KernelSpec,
                      build_kernel, c_alpha, decay_regime_bound,
                      kernel_bound_objective, kernel_mdl_bound, kl_kernel_code,
                      power_law_eigenvalues)

GOLDEN_LAMBDA = (np.sqrt(5.0) - 1.0) / 2.0


def _toy_bound_input(snr_sq=1.0):
    return KernelComplexityInput(eigenvalues=np.array([1.0]),
                                 hilbert_norm_sq_over_sigma_sq=snr_sq)


class TestKernelSpec:
    def test_rbf_requires_bandwidth(self):
        with pytest.raises(ValueError):
            KernelSpec(kind="rbf")
        with pytest.raises(ValueError):
            KernelSpec(kind="rbf", bandwidth=0.0)

    def test_polynomial_requires_degree(self):
        with pytest.raises(ValueError):
            KernelSpec(kind="polynomial")

    def test_precomputed_requires_path(self):
        with pytest.raises(ValueError):
            KernelSpec(kind="precomputed")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            KernelSpec(kind="bogus")


class TestBuildKernel:
    def test_rbf_formula(self):
        X = np.array([[0.0], [2.0]])
        K = build_kernel(X, KernelSpec(kind="rbf", bandwidth=1.0))
        assert np.allclose(np.diag(K), 1.0)
        assert K[0, 1] == pytest.approx(np.exp(-4.0 / 2.0), rel=1e-12)
        assert K[0, 1] == K[1, 0]

    def test_rbf_identical_points(self):
        X = np.ones((3, 2))
        K = build_kernel(X, KernelSpec(kind="rbf", bandwidth=0.5))
        assert np.allclose(K, 1.0)

    def test_polynomial_formula(self):
        X = np.array([[1.0, 0.0], [0.0, 2.0]])
        K = build_kernel(X, KernelSpec(kind="polynomial", degree=2, offset=1.0))
        assert K[0, 0] == pytest.approx((1.0 + 1.0) ** 2)
        assert K[0, 1] == pytest.approx((0.0 + 1.0) ** 2)
        assert K[1, 1] == pytest.approx((4.0 + 1.0) ** 2)

    def test_normalize_sets_trace_to_n(self):
        X = np.random.default_rng(0).standard_normal((5, 2))
        K = build_kernel(X, KernelSpec(kind="polynomial", degree=1, normalize=True))
        assert np.trace(K) == pytest.approx(5.0, rel=1e-12)

    def test_precomputed_roundtrip(self, tmp_path):
        K_in = np.array([[2.0, 0.5], [0.5, 1.0]])
        path = tmp_path / "kernel.csv"
        np.savetxt(path, K_in, delimiter=",")
        K = build_kernel(None, KernelSpec(kind="precomputed", path=str(path)))
        assert np.allclose(K, K_in)

    def test_precomputed_asymmetric_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        np.savetxt(path, np.array([[1.0, 2.0], [0.0, 1.0]]), delimiter=",")
        with pytest.raises(ValueError):
            build_kernel(None, KernelSpec(kind="precomputed", path=str(path)))

    def test_generated_kinds_need_points(self):
        with pytest.raises(ValueError):
            build_kernel(None, KernelSpec(kind="rbf", bandwidth=1.0))

    def test_normalize_rejects_zero_trace(self):
        X = np.zeros((3, 2))
        with pytest.raises(ValueError):
            build_kernel(X, KernelSpec(kind="polynomial", degree=1, normalize=True))


class TestKernelComplexityInput:
    def test_sorts_spectrum_and_keeps_pairs(self):
        inp = KernelComplexityInput(eigenvalues=np.array([1.0, 3.0, 2.0]),
                                    rotated_truth=np.array([10.0, 30.0, 20.0]),
                                    noise_variance=1.0)
        assert np.array_equal(inp.eigenvalues, [3.0, 2.0, 1.0])
        assert np.array_equal(inp.rotated_truth, [30.0, 20.0, 10.0])

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError):
            KernelComplexityInput(eigenvalues=np.array([1.0, -0.1]))

    def test_from_kernel_matches_eigh(self):
        rng = np.random.default_rng(1)
        B = rng.standard_normal((4, 4))
        K = B @ B.T
        inp = KernelComplexityInput.from_kernel(K, snr_sq=2.0)
        ref = np.sort(np.linalg.eigvalsh(K))[::-1]
        assert np.allclose(inp.eigenvalues, np.clip(ref, 0, None), atol=1e-10)
        assert inp.n == 4

    def test_from_kernel_rotates_truth(self):
        rng = np.random.default_rng(2)
        B = rng.standard_normal((4, 4))
        K = B @ B.T
        y_star = rng.standard_normal(4)
        inp = KernelComplexityInput.from_kernel(K, truth_values=y_star,
                                                noise_variance=1.0)
        # The rotation is orthogonal, so the norm survives.
        assert np.linalg.norm(inp.rotated_truth) == pytest.approx(
            np.linalg.norm(y_star), rel=1e-10)

    def test_truth_requires_noise_variance(self):
        with pytest.raises(ValueError):
            KernelComplexityInput.from_kernel(np.eye(2), truth_values=np.ones(2))

    def test_snr_must_be_nonnegative(self):
        with pytest.raises(ValueError):
            KernelComplexityInput(eigenvalues=np.ones(2),
                                  hilbert_norm_sq_over_sigma_sq=-1.0)


class TestKlKernelCode:
    def test_identity_kernel_unit_signal(self):
        # K = I, alpha_i^2 = sigma^2, lam = 1: each coordinate contributes
        # (1/2)(1 + 1) * (1/2) + (1/2) log 2, totalling log(2)/2 + ... = log 2 / 2
        # per sample after the -1/2 constant.
        inp = KernelComplexityInput.from_kernel(np.eye(2), truth_values=np.ones(2),
                                                noise_variance=1.0)
        assert kl_kernel_code(inp, 1.0) == pytest.approx(0.5 * np.log(2.0), abs=1e-15)

    def test_zero_truth_frozen_value(self):
        inp = KernelComplexityInput.from_kernel(np.eye(2), truth_values=np.zeros(2),
                                                noise_variance=1.0)
        # quad = 1/2 each, logdet = log 2 each: 1/2 + (log 2)/2 - 1/2 per pair.
        assert kl_kernel_code(inp, 1.0) == pytest.approx(0.0965735902799727, abs=1e-15)

    def test_matrix_assembly_identity(self):
        rng = np.random.default_rng(7)
        B = rng.standard_normal((6, 6))
        K = B @ B.T
        y_star = K @ rng.standard_normal(6)
        sigma2 = 0.7
        inp = KernelComplexityInput.from_kernel(K, truth_values=y_star,
                                                noise_variance=sigma2)
        lam = 0.3
        n = 6
        t1 = lam * float(y_star @ np.linalg.solve(K + lam * np.eye(n), y_star)) \
            / (2 * n * sigma2)
        t2 = float(np.sum(lam / (lam + inp.eigenvalues))) / (2 * n)
        t3 = float(np.linalg.slogdet(np.eye(n) + K / lam)[1]) / (2 * n)
        assert kl_kernel_code(inp, lam) == pytest.approx(t1 + t2 + t3 - 0.5, rel=1e-10)

    def test_bounded_by_norm_based_objective(self):
        # For a truth in the span of the kernel the exact KL never exceeds
        # the spectrum-plus-norm bound objective at the same penalty.
        rng = np.random.default_rng(8)
        B = rng.standard_normal((5, 5))
        K = B @ B.T
        beta = rng.standard_normal(5)
        y_star = K @ beta
        sigma2 = 1.3
        snr_sq = float(beta @ K @ beta) / sigma2
        inp = KernelComplexityInput.from_kernel(K, snr_sq=snr_sq,
                                                truth_values=y_star,
                                                noise_variance=sigma2)
        for lam in (0.01, 0.3, 5.0, 100.0):
            assert kl_kernel_code(inp, lam) <= kernel_bound_objective(inp, lam) + 1e-12

    def test_zero_penalty_gives_infinity(self):
        inp = KernelComplexityInput.from_kernel(np.eye(2), truth_values=np.ones(2),
                                                noise_variance=1.0)
        assert kl_kernel_code(inp, 0.0) == np.inf

    def test_negative_penalty_rejected(self):
        inp = KernelComplexityInput.from_kernel(np.eye(2), truth_values=np.ones(2),
                                                noise_variance=1.0)
        with pytest.raises(ValueError):
            kl_kernel_code(inp, -1.0)

    def test_requires_rotated_truth(self):
        with pytest.raises(ValueError):
            kl_kernel_code(_toy_bound_input(), 1.0)


class TestKernelMdlBound:
    def test_toy_golden_ratio_minimizer(self):
        res = kernel_mdl_bound(_toy_bound_input())
        assert abs(res.lambda_opt - GOLDEN_LAMBDA) < 1e-6
        assert res.value == pytest.approx(0.7902288194345508, rel=1e-9)
        assert not res.at_grid_edge
        assert res.adjusted_value is None

    def test_toy_matches_objective_at_minimizer(self):
        inp = _toy_bound_input()
        res = kernel_mdl_bound(inp)
        assert res.value == pytest.approx(kernel_bound_objective(inp, res.lambda_opt),
                                          rel=1e-12)

    def test_all_zero_spectrum(self):
        inp = KernelComplexityInput(eigenvalues=np.zeros(3),
                                    hilbert_norm_sq_over_sigma_sq=1.0)
        res = kernel_mdl_bound(inp)
        assert res.value == 0.0
        assert res.lambda_opt == 0.0
        assert res.at_grid_edge

    def test_adjusted_value(self):
        res = kernel_mdl_bound(_toy_bound_input(), include_lambda_codelength=True)
        assert res.adjusted_value == pytest.approx(
            res.value + np.log(res.lambda_opt) / 1, rel=1e-12)

    def test_requires_snr(self):
        inp = KernelComplexityInput(eigenvalues=np.ones(2))
        with pytest.raises(ValueError):
            kernel_mdl_bound(inp)

    def test_monotone_in_snr(self):
        values = [kernel_mdl_bound(_toy_bound_input(s)).value
                  for s in (0.5, 1.0, 2.0, 8.0)]
        assert np.all(np.diff(values) > 0)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_permutation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        rho = rng.uniform(0.0, 5.0, size=8)
        inp = KernelComplexityInput(eigenvalues=np.sort(rho)[::-1],
                                    hilbert_norm_sq_over_sigma_sq=2.0)
        shuffled = KernelComplexityInput(eigenvalues=rng.permutation(rho),
                                         hilbert_norm_sq_over_sigma_sq=2.0)
        a, b = kernel_mdl_bound(inp), kernel_mdl_bound(shuffled)
        assert a.value == b.value
        assert a.lambda_opt == b.lambda_opt

    def test_objective_manual_formula(self):
        inp = KernelComplexityInput(eigenvalues=np.array([4.0, 1.0]),
                                    hilbert_norm_sq_over_sigma_sq=3.0)
        lam = 0.5
        expected = lam * 3.0 / 4.0 + (np.log1p(4.0 / lam) + np.log1p(1.0 / lam)) / 4.0
        assert kernel_bound_objective(inp, lam) == pytest.approx(expected, rel=1e-12)


class TestPowerLawSpectra:
    def test_c_alpha_partial_sum(self):
        assert c_alpha(3, 1.0) == pytest.approx(1 + 1 / 4 + 1 / 9, rel=1e-12)
        with pytest.raises(ValueError):
            c_alpha(0, 1.0)

    def test_power_law_eigenvalues(self):
        rho = power_law_eigenvalues(4, alpha=1.0)
        c = c_alpha(4, 1.0)
        expected = c * 4 * np.arange(1, 5, dtype=float) ** -2.0
        assert np.allclose(rho, expected, rtol=1e-12)
        assert np.all(np.diff(rho) < 0)


class TestDecayRegimeBound:
    def test_gaussian_like_formula(self):
        regime = DecayRegime(kind="gaussian_like", n=100, snr=2.0, d=3)
        expected = 3 * np.log(100 * 3 * 4.0) ** 2 / 100
        assert decay_regime_bound(regime) == pytest.approx(expected, rel=1e-12)

    def test_sobolev_formula(self):
        regime = DecayRegime(kind="sobolev", n=1000, snr=2.0, d=1, omega=2.0)
        alpha = 2.0
        expo = 4.0 / 5.0
        constant = alpha ** (2 * alpha / (1 + 2 * alpha)) * 2.0 ** (2 / (1 + 2 * alpha))
        expected = constant * (np.log(1000 * 4.0) / 1000) ** expo
        assert decay_regime_bound(regime) == pytest.approx(expected, rel=1e-12)

    def test_ntk_exponent(self):
        regime = DecayRegime(kind="ntk_like", n=1000, snr=1.5, d=2, a=1.0)
        alpha = 1.5
        expo = 3.0 / 4.0
        constant = alpha ** (2 * alpha / (1 + 2 * alpha)) * 1.5 ** (2 / (1 + 2 * alpha))
        expected = constant * (np.log(1000 * 2.25) / 1000) ** expo
        assert decay_regime_bound(regime) == pytest.approx(expected, rel=1e-12)

    def test_log_positivity_requirement(self):
        regime = DecayRegime(kind="sobolev", n=1, snr=1.0, d=1, omega=2.0)
        with pytest.raises(ValueError):
            decay_regime_bound(regime)

    def test_regime_validation(self):
        with pytest.raises(ValueError):
            DecayRegime(kind="sobolev", n=10, snr=1.0, d=2, omega=1.0)  # omega <= d/2
        with pytest.raises(ValueError):
            DecayRegime(kind="ntk_like", n=10, snr=1.0, d=1, a=0.0)  # d + a <= 1
        with pytest.raises(ValueError):
            DecayRegime(kind="gaussian_like", n=10, snr=0.0)
        with pytest.raises(ValueError):
            DecayRegime(kind="bogus", n=10, snr=1.0)
