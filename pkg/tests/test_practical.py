"""Data-driven penalty selection from the codelength objective."""

import numpy as np
import pytest

from ridgemdl import (GRID_PRESETS, Dataset, approx_redundancy,
                      estimate_noise_variance, log_grid, prac_objective_kernel,
                      prac_objective_linear, resolve_grid,
                      select_lambda_prac_kernel, select_lambda_prac_linear,
                      spectral_decompose)

# n = d = 1, X = 1, y = 2, sigma^2 = 1: the objective has its minimum at
# lambda = 1/3 with value (1 + log 4)/2 and half-redundancy log(4)/2 there.
TOY_OBJECTIVE = 1.1931471805599454
TOY_APPROX_ROPT = 0.5 * np.log(4.0)


def _toy_dataset():
    return Dataset(np.array([[1.0]]), np.array([2.0]), 1.0)


def _random_dataset(seed, n=30, d=8, sigma2=1.0):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    theta = rng.standard_normal(d)
    y = X @ theta + rng.normal(0.0, np.sqrt(sigma2), n)
    return Dataset(X, y, sigma2)


class TestGrids:
    @pytest.mark.parametrize("name,lo,hi,count", [("sim20", 1e-3, 1e6, 20),
                                                  ("pmlb10", 1e-3, 1e3, 10),
                                                  ("fmri40", 1.0, 1e6, 40)])
    def test_preset_endpoints(self, name, lo, hi, count):
        grid = resolve_grid(name)
        assert grid[0] == lo
        assert grid[-1] == hi
        assert grid.size == count
        assert name in GRID_PRESETS

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            resolve_grid("bogus")

    def test_explicit_grid_passthrough(self):
        grid = resolve_grid(np.array([0.1, 1.0, 10.0]))
        assert np.array_equal(grid, [0.1, 1.0, 10.0])

    @pytest.mark.parametrize("bad", [[0.0, 1.0], [-1.0, 1.0], [2.0, 1.0], []])
    def test_invalid_explicit_grids(self, bad):
        with pytest.raises(ValueError):
            resolve_grid(np.array(bad))


class TestLinearObjective:
    def test_toy_value_at_optimum(self):
        ds = _toy_dataset()
        dec = spectral_decompose(ds.covariates)
        value = prac_objective_linear(dec, ds.response, 1.0 / 3.0, 1.0)
        assert value == pytest.approx(TOY_OBJECTIVE, abs=1e-15)

    def test_toy_optimum_is_interior(self):
        ds = _toy_dataset()
        dec = spectral_decompose(ds.covariates)
        base = prac_objective_linear(dec, ds.response, 1.0 / 3.0, 1.0)
        for lam in (1.0 / 3.0 - 1e-4, 1.0 / 3.0 + 1e-4):
            assert prac_objective_linear(dec, ds.response, lam, 1.0) > base

    def test_matrix_form_identity(self):
        # The spectral shortcut equals the ridge-regularized data fit
        # y^T (I - X (X^T X + lam I)^{-1} X^T) y plus the penalty term.
        ds = _random_dataset(0, n=12, d=5)
        dec = spectral_decompose(ds.covariates)
        lam, sigma2 = 0.7, 1.3
        X, y, n = ds.covariates, ds.response, ds.n
        data_fit = float(y @ (y - X @ np.linalg.solve(
            X.T @ X + lam * np.eye(ds.d), X.T @ y)))
        rho = dec.eigenvalues[dec.eigenvalues > 0]
        expected = (data_fit / (2 * sigma2) + 0.5 * np.log1p(rho / lam).sum()) / n
        value = prac_objective_linear(dec, y, lam, sigma2)
        assert value == pytest.approx(expected, rel=1e-9)

    def test_scale_invariance(self):
        # Scaling y by c and sigma^2 by c^2 leaves the objective unchanged.
        ds = _random_dataset(1, n=20, d=6)
        dec = spectral_decompose(ds.covariates)
        c = 7.0
        for lam in (0.01, 1.0, 100.0):
            a = prac_objective_linear(dec, ds.response, lam, 1.0)
            b = prac_objective_linear(dec, c * ds.response, lam, c ** 2)
            assert a == pytest.approx(b, rel=1e-12)

    def test_zero_penalty_gives_infinity(self):
        ds = _toy_dataset()
        dec = spectral_decompose(ds.covariates)
        assert prac_objective_linear(dec, ds.response, 0.0, 1.0) == np.inf

    def test_negative_penalty_rejected(self):
        ds = _toy_dataset()
        dec = spectral_decompose(ds.covariates)
        with pytest.raises(ValueError):
            prac_objective_linear(dec, ds.response, -1.0, 1.0)


class TestKernelObjective:
    @pytest.mark.parametrize("n,d", [(8, 4), (6, 6), (4, 9)])
    def test_agrees_with_linear_on_gram_kernel(self, n, d):
        # With K = X X^T the primal and dual objectives coincide exactly.
        ds = _random_dataset(2, n=n, d=d)
        dec = spectral_decompose(ds.covariates)
        K = ds.covariates @ ds.covariates.T
        for lam in (0.05, 1.0, 30.0):
            a = prac_objective_linear(dec, ds.response, lam, 1.0)
            b = prac_objective_kernel(K, ds.response, lam, 1.0)
            assert a == pytest.approx(b, rel=1e-10)

    def test_toy_value(self):
        value = prac_objective_kernel(np.array([[1.0]]), np.array([2.0]),
                                      1.0 / 3.0, 1.0)
        assert value == pytest.approx(TOY_OBJECTIVE, abs=1e-14)


class TestApproxRedundancy:
    def test_manual_formula(self):
        rho = np.array([4.0, 1.0, 0.0])
        value = approx_redundancy(rho, 2.0, n=3)
        expected = (np.log1p(2.0) + np.log1p(0.5)) / 6.0
        assert value == pytest.approx(expected, rel=1e-12)

    def test_decreasing_in_lambda(self):
        rho = np.array([3.0, 1.0, 0.5])
        values = [approx_redundancy(rho, lam, 3) for lam in (0.1, 1.0, 10.0)]
        assert values[0] > values[1] > values[2]

    def test_requires_positive_lambda(self):
        with pytest.raises(ValueError):
            approx_redundancy(np.ones(2), 0.0, 2)


class TestSelectLinear:
    def test_toy_selection(self):
        sel = select_lambda_prac_linear(_toy_dataset(), "sim20")
        assert abs(sel.selected_lambda - 1.0 / 3.0) < 1e-4
        assert sel.objective_value == pytest.approx(TOY_OBJECTIVE, abs=1e-12)
        assert sel.approx_ropt == pytest.approx(TOY_APPROX_ROPT, abs=1e-6)
        assert not sel.at_grid_edge
        assert sel.grid_trace.shape == (20, 2)
        assert sel.fit.lambda_used.scalar == pytest.approx(sel.selected_lambda)

    def test_sigma2_defaults_to_dataset(self):
        ds = Dataset(np.array([[1.0]]), np.array([2.0]), 4.0)
        implicit = select_lambda_prac_linear(ds, "sim20")
        explicit = select_lambda_prac_linear(ds, "sim20", sigma2=4.0)
        assert implicit.selected_lambda == explicit.selected_lambda
        other = select_lambda_prac_linear(ds, "sim20", sigma2=1.0)
        assert implicit.selected_lambda != other.selected_lambda

    def test_zero_response_runs_to_grid_edge(self):
        ds = Dataset(np.eye(3), np.zeros(3), 1.0)
        sel = select_lambda_prac_linear(ds, "sim20")
        assert sel.at_grid_edge
        assert sel.selected_lambda == 1e6

    def test_refine_false_stays_on_grid(self):
        grid = resolve_grid("sim20")
        sel = select_lambda_prac_linear(_toy_dataset(), grid, refine=False)
        assert sel.selected_lambda in grid

    def test_refinement_never_hurts(self):
        for seed in range(5):
            ds = _random_dataset(seed + 10)
            coarse = select_lambda_prac_linear(ds, "sim20", refine=False)
            fine = select_lambda_prac_linear(ds, "sim20", refine=True)
            assert fine.objective_value <= coarse.objective_value + 1e-15

    def test_deterministic(self):
        ds = _random_dataset(20)
        a = select_lambda_prac_linear(ds, "sim20")
        b = select_lambda_prac_linear(ds, "sim20")
        assert a.selected_lambda == b.selected_lambda
        assert a.objective_value == b.objective_value

    def test_precomputed_decomposition_matches(self):
        ds = _random_dataset(21)
        dec = spectral_decompose(ds.covariates)
        a = select_lambda_prac_linear(ds, "sim20", decomposition=dec)
        b = select_lambda_prac_linear(ds, "sim20")
        assert a.selected_lambda == b.selected_lambda

    def test_trace_matches_objective(self):
        ds = _random_dataset(22)
        dec = spectral_decompose(ds.covariates)
        sel = select_lambda_prac_linear(ds, "sim20", decomposition=dec)
        for lam, value in sel.grid_trace[::5]:
            assert value == pytest.approx(
                prac_objective_linear(dec, ds.response, lam, 1.0), rel=1e-12)

    def test_single_point_grid(self):
        sel = select_lambda_prac_linear(_toy_dataset(), np.array([2.0]))
        assert sel.selected_lambda == 2.0
        assert sel.at_grid_edge


class TestSelectKernel:
    def test_toy_selection(self):
        sel = select_lambda_prac_kernel(np.array([[1.0]]), np.array([2.0]), "sim20")
        assert abs(sel.selected_lambda - 1.0 / 3.0) < 1e-4
        assert sel.objective_value == pytest.approx(TOY_OBJECTIVE, abs=1e-12)
        assert sel.approx_ropt == pytest.approx(TOY_APPROX_ROPT, abs=1e-6)

    def test_agrees_with_linear_on_gram_kernel(self):
        ds = _random_dataset(30, n=15, d=6)
        K = ds.covariates @ ds.covariates.T
        a = select_lambda_prac_linear(ds, "sim20")
        b = select_lambda_prac_kernel(K, ds.response, "sim20", sigma2=1.0)
        assert a.selected_lambda == pytest.approx(b.selected_lambda, rel=1e-6)

    def test_fit_holds_dual_coefficients(self):
        rng = np.random.default_rng(31)
        B = rng.standard_normal((5, 5))
        K = B @ B.T
        y = rng.standard_normal(5)
        sel = select_lambda_prac_kernel(K, y, "sim20")
        direct = np.linalg.solve(K + sel.selected_lambda * np.eye(5), y)
        assert np.allclose(sel.fit.coefficients, direct, atol=1e-8)


class TestNoiseVariancePlugin:
    def test_recovers_known_noise_scale(self):
        ds = _random_dataset(40, n=200, d=10, sigma2=1.0)
        estimate = estimate_noise_variance(ds)
        assert 0.6 < estimate < 1.6

    def test_tracks_noise_level(self):
        low = estimate_noise_variance(_random_dataset(41, n=150, d=5, sigma2=0.5))
        high = estimate_noise_variance(_random_dataset(41, n=150, d=5, sigma2=8.0))
        assert high > low

    def test_interpolating_fit_rejected(self):
        # A huge spectrum pushes the hat-matrix trace to n at every grid
        # penalty, leaving no residual degrees of freedom.
        X = 1e8 * np.eye(5)
        y = np.random.default_rng(42).standard_normal(5)
        with pytest.raises(ValueError):
            estimate_noise_variance(Dataset(X, y, 1.0))
