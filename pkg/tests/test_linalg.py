"""Spectral decomposition and the seeded synthetic-data generators."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import dataclasses

from ridgemdl import (Dataset, DesignSpec, TruthSpec, generate_design,
                      generate_truth, project_truth, sample_linear_model,
                      spectral_decompose)


class TestDataset:
    def test_properties(self):
        ds = Dataset(np.ones((4, 3)), np.ones(4), 2.0)
        assert (ds.n, ds.d) == (4, 3)
        assert ds.noise_variance == 2.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Dataset(np.ones((4, 3)), np.ones(5))

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            Dataset(np.array([[np.nan, 1.0]]), np.ones(1))
        with pytest.raises(ValueError):
            Dataset(np.ones((2, 2)), np.array([1.0, np.inf]))

    @pytest.mark.parametrize("sigma2", [0.0, -1.0, np.nan])
    def test_noise_variance_positive(self, sigma2):
        with pytest.raises(ValueError):
            Dataset(np.ones((2, 2)), np.ones(2), sigma2)


class TestSpectralDecompose:
    def _check(self, X):
        n, d = X.shape
        m = min(n, d)
        dec = spectral_decompose(X)
        rho, U, V = dec.eigenvalues, dec.eigenvectors, dec.left_vectors
        assert rho.shape == (d,)
        assert U.shape == (d, d)
        assert V.shape == (n, m)
        assert (dec.n, dec.d, dec.m) == (n, d, m)
        # Nonincreasing, nonnegative, exactly zero beyond min(n, d).
        assert np.all(np.diff(rho) <= 1e-12 * max(rho[0], 1.0))
        assert np.all(rho >= 0)
        assert np.all(rho[m:] == 0.0)
        # U orthonormal and diagonalizing.
        assert np.allclose(U.T @ U, np.eye(d), atol=1e-10)
        assert np.allclose(X.T @ X @ U, U * rho, atol=1e-8 * max(rho[0], 1.0))
        # Left vectors pair up: X U_i = sqrt(rho_i) V_i on nonzero eigenvalues.
        nz = rho[:m] > 0
        assert np.allclose(X @ U[:, :m][:, nz], V[:, nz] * np.sqrt(rho[:m][nz]),
                           atol=1e-8 * max(np.sqrt(rho[0]), 1.0))
        if np.any(nz):
            gram = V[:, nz].T @ V[:, nz]
            assert np.allclose(gram, np.eye(int(nz.sum())), atol=1e-8)

    @pytest.mark.parametrize("n,d", [(6, 3), (3, 6), (5, 5), (1, 4), (4, 1)])
    def test_shapes_and_identities(self, n, d):
        self._check(np.random.default_rng(n * 10 + d).standard_normal((n, d)))

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 8), d=st.integers(1, 8), seed=st.integers(0, 10_000))
    def test_identities_property(self, n, d, seed):
        self._check(np.random.default_rng(seed).standard_normal((n, d)))

    def test_matches_numpy_eigenvalues(self):
        X = np.random.default_rng(3).standard_normal((7, 4))
        dec = spectral_decompose(X)
        ref = np.sort(np.linalg.eigvalsh(X.T @ X))[::-1]
        assert np.allclose(dec.eigenvalues, np.clip(ref, 0, None), atol=1e-10)

    def test_deterministic_sign_convention(self):
        X = np.random.default_rng(4).standard_normal((5, 8))
        a = spectral_decompose(X)
        b = spectral_decompose(X.copy())
        assert np.array_equal(a.eigenvectors, b.eigenvectors)
        assert np.array_equal(a.left_vectors, b.left_vectors)
        # Largest-magnitude entry of each eigenvector column is positive.
        idx = np.argmax(np.abs(a.eigenvectors), axis=0)
        assert np.all(a.eigenvectors[idx, np.arange(8)] > 0)

    def test_rank_deficient_design(self):
        X = np.ones((4, 3))  # rank one
        dec = spectral_decompose(X)
        assert np.sum(dec.eigenvalues > 0) == 1
        assert dec.eigenvalues[0] == pytest.approx(12.0)

    def test_rotated_truth(self):
        X = np.random.default_rng(5).standard_normal((6, 4))
        theta = np.random.default_rng(6).standard_normal(4)
        dec = spectral_decompose(X, truth=theta)
        assert np.allclose(dec.rotated_truth, dec.eigenvectors.T @ theta)
        # Rotation preserves the norm.
        assert np.linalg.norm(dec.rotated_truth) == pytest.approx(np.linalg.norm(theta))

    def test_rotated_truth_padded(self):
        X = np.random.default_rng(7).standard_normal((3, 5))
        theta = np.array([1.0, 2.0])  # shorter than d: zero-padded
        dec = spectral_decompose(X, truth=theta)
        assert dec.rotated_truth.shape == (5,)
        assert np.allclose(dec.rotated_truth,
                           dec.eigenvectors.T @ np.array([1.0, 2.0, 0, 0, 0]))

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            spectral_decompose(np.ones(3))
        with pytest.raises(ValueError):
            spectral_decompose(np.array([[1.0, np.inf]]))


class TestDesignSpec:
    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            DesignSpec(kind="bogus", n=5, d=3)

    def test_decaying_requires_alpha(self):
        with pytest.raises(ValueError):
            DesignSpec(kind="decaying", n=5, d=3)

    def test_spike_requires_valid_count(self):
        with pytest.raises(ValueError):
            DesignSpec(kind="spike", n=5, d=3, s=4)

    def test_bad_row_scale(self):
        with pytest.raises(ValueError):
            DesignSpec(kind="gaussian_iid", n=5, d=3, row_scale="bogus")


class TestGenerators:
    def test_design_deterministic(self):
        spec = DesignSpec(kind="gaussian_iid", n=20, d=6, seed=42)
        assert np.array_equal(generate_design(spec), generate_design(spec))
        other = dataclasses.replace(spec, seed=43)
        assert not np.array_equal(generate_design(spec), generate_design(other))

    def test_inv_n_variance_scale(self):
        spec = DesignSpec(kind="gaussian_iid", n=4000, d=5, seed=0)
        scaled = dataclasses.replace(spec, row_scale="inv_n_variance")
        X, Xs = generate_design(spec), generate_design(scaled)
        assert np.allclose(Xs, X / np.sqrt(4000))
        # Expected squared column norm is one.
        assert np.allclose(np.sum(Xs ** 2, axis=0), 1.0, atol=0.2)

    def test_decaying_column_scale(self):
        spec = DesignSpec(kind="decaying", n=20_000, d=4, alpha=2.0, seed=1)
        X = generate_design(spec)
        stds = X.std(axis=0)
        expected = np.arange(1, 5, dtype=float) ** -1.0
        assert np.allclose(stds, expected, rtol=0.05)

    def test_spike_column_scale(self):
        spec = DesignSpec(kind="spike", n=20_000, d=4, s=2, seed=2)
        X = generate_design(spec)
        stds = X.std(axis=0)
        assert np.allclose(stds[:2], 4.0, rtol=0.05)
        assert np.allclose(stds[2:], 1.0, rtol=0.05)

    def test_cosine_zeroes_odd_columns(self):
        spec = DesignSpec(kind="cosine", n=50, d=6, seed=3)
        X = generate_design(spec)
        assert np.all(X[:, [0, 2, 4]] == 0.0)  # 1-based odd columns
        assert np.all(X[:, [1, 3, 5]] != 0.0)

    def test_truth_norm_exact(self):
        theta = generate_truth(TruthSpec(true_dim=17, norm=3.5, seed=9))
        assert theta.shape == (17,)
        assert np.linalg.norm(theta) == pytest.approx(3.5, abs=1e-12)

    def test_truth_deterministic(self):
        spec = TruthSpec(true_dim=8, norm=1.0, seed=5)
        assert np.array_equal(generate_truth(spec), generate_truth(spec))

    def test_truth_spec_validation(self):
        with pytest.raises(ValueError):
            TruthSpec(true_dim=0)
        with pytest.raises(ValueError):
            TruthSpec(true_dim=3, norm=0.0)

    def test_project_truth(self):
        theta = np.array([1.0, 2.0, 3.0])
        assert np.array_equal(project_truth(theta, 2), [1.0, 2.0])
        assert np.array_equal(project_truth(theta, 5), [1.0, 2.0, 3.0, 0.0, 0.0])
        assert np.array_equal(project_truth(theta, 3), theta)
        with pytest.raises(ValueError):
            project_truth(theta, 0)

    def test_sample_linear_model(self):
        X = np.random.default_rng(0).standard_normal((30, 4))
        theta = np.arange(1.0, 5.0)
        y1 = sample_linear_model(X, theta, 1.0, seed=7)
        y2 = sample_linear_model(X, theta, 1.0, seed=7)
        assert np.array_equal(y1, y2)
        y3 = sample_linear_model(X, theta, 1e-18, seed=7)
        assert np.allclose(y3, X @ theta, atol=1e-6)
        with pytest.raises(ValueError):
            sample_linear_model(X, theta[:2], 1.0, seed=0)
        with pytest.raises(ValueError):
            sample_linear_model(X, theta, 0.0, seed=0)
