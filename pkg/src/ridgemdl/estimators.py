"""Closed-form linear and kernel ridge fits plus cross-validation baselines.

Linear solves go through the spectral decomposition of X^T X, so one
decomposition serves every penalty on a grid.  Per-coordinate penalties are
applied in the Gram eigenbasis exclusively: Lambda = U diag(lambda) U^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Dataset, SpectralDecomposition, spectral_decompose


# ---------------------------------------------------------------------------
# Penalties and fit results
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PenaltySpec:
    """Scalar or per-coordinate ridge penalty in the Gram eigenbasis.

    Exactly one of `scalar` and `per_coordinate` is set.  Entries must be
    strictly positive; scalar zero is permitted only to request the
    ordinary-least-squares baseline path.
    """

    scalar: float | None = None
    per_coordinate: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.scalar is None) == (self.per_coordinate is None):
            raise ValueError("set exactly one of `scalar` and `per_coordinate`.")
        if self.scalar is not None:
            if not np.isfinite(self.scalar) or self.scalar < 0:
                raise ValueError("`scalar` must be a finite nonnegative real "
                                 "(zero selects the OLS baseline).")
            object.__setattr__(self, "scalar", float(self.scalar))
        else:
            vec = np.asarray(self.per_coordinate, dtype=float).ravel()
            if vec.size == 0 or not np.all(np.isfinite(vec)) or np.any(vec <= 0):
                raise ValueError("`per_coordinate` entries must be finite and "
                                 "strictly positive.")
            object.__setattr__(self, "per_coordinate", vec)

    @classmethod
    def coerce(cls, penalty) -> "PenaltySpec":
        """Accept a PenaltySpec, a scalar, or a vector."""
        if isinstance(penalty, cls):
            return penalty
        if np.isscalar(penalty):
            return cls(scalar=float(penalty))
        return cls(per_coordinate=np.asarray(penalty, dtype=float))

    @property
    def is_ols(self) -> bool:
        return self.scalar == 0.0

    def as_vector(self, d: int) -> np.ndarray:
        """Penalty as a length-d vector in the eigenbasis."""
        if self.scalar is not None:
            return np.full(d, self.scalar)
        if self.per_coordinate.shape[0] != d:
            raise ValueError(f"per-coordinate penalty has length "
                             f"{self.per_coordinate.shape[0]}, expected {d}.")
        return self.per_coordinate


@dataclass(frozen=True, eq=False)
class FitResult:
    """A fitted estimator: coefficients, the penalty used, and the training
    residual sum of squares.  `minimum_norm` marks an OLS fit that fell back
    to the minimum-norm solution because the Gram matrix was rank deficient.
    """

    coefficients: np.ndarray
    lambda_used: PenaltySpec
    training_residual_sq: float
    minimum_norm: bool = False


@dataclass(frozen=True, eq=False)
class CvResult:
    """Cross-validation trace: the grid, one mean squared prediction error
    per grid value, and the selected lambda (ties break toward smaller
    lambda)."""

    grid: np.ndarray
    cv_errors: np.ndarray
    selected_lambda: float
    scheme: str


def _select_min(grid: np.ndarray, errors: np.ndarray) -> float:
    """Smallest lambda attaining the minimal error."""
    best = np.min(errors)
    return float(grid[np.flatnonzero(errors == best)[0]])


# ---------------------------------------------------------------------------
# Linear ridge
# ---------------------------------------------------------------------------

def fit_ridge(dataset: Dataset, penalty, decomposition: SpectralDecomposition | None = None) -> FitResult:
    """Closed-form ridge fit theta = (X^T X + Lambda)^(-1) X^T y.

    Parameters
    ----------
    dataset : Dataset
    penalty : PenaltySpec, float, or ndarray
        Scalar lambda, per-coordinate vector (length d, eigenbasis order),
        or a PenaltySpec.  Scalar zero requests OLS; with a rank-deficient
        Gram matrix the minimum-norm solution is returned and flagged.
    decomposition : SpectralDecomposition, optional
        Reuse a precomputed decomposition of the covariates.

    Returns
    -------
    FitResult
    """
    penalty = PenaltySpec.coerce(penalty)
    X, y = dataset.covariates, dataset.response
    decomp = decomposition if decomposition is not None else spectral_decompose(X)
    if decomp.d != dataset.d or decomp.n != dataset.n:
        raise ValueError("`decomposition` does not match the dataset shape.")
    rho, U = decomp.eigenvalues, decomp.eigenvectors
    z = U.T @ (X.T @ y)
    minimum_norm = False
    if penalty.is_ols:
        coef_eig = np.zeros_like(z)
        nz = rho > 0
        coef_eig[nz] = z[nz] / rho[nz]
        minimum_norm = int(np.count_nonzero(nz)) < dataset.d
    else:
        lam = penalty.as_vector(dataset.d)
        coef_eig = z / (rho + lam)
    theta = U @ coef_eig
    resid = y - X @ theta
    return FitResult(coefficients=theta, lambda_used=penalty,
                     training_residual_sq=float(resid @ resid),
                     minimum_norm=minimum_norm)


def predict_linear(coefficients: np.ndarray, X_new: np.ndarray) -> np.ndarray:
    """Predictions X_new @ coefficients."""
    coefficients = np.asarray(coefficients, dtype=float).ravel()
    X_new = np.atleast_2d(np.asarray(X_new, dtype=float))
    if X_new.shape[1] != coefficients.shape[0]:
        raise ValueError("`X_new` column count must match the coefficient length.")
    return X_new @ coefficients


# ---------------------------------------------------------------------------
# Kernel ridge
# ---------------------------------------------------------------------------

def validate_kernel(K: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Check that K is a square symmetric PSD matrix within `tol`.

    Symmetry is relative to the largest entry magnitude; positive
    semidefiniteness allows eigenvalues down to -tol times the largest
    eigenvalue.  Returns the symmetrized matrix.
    """
    K = np.asarray(K, dtype=float)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("`K` must be a square matrix.")
    if not np.all(np.isfinite(K)):
        raise ValueError("`K` must contain only finite entries.")
    scale = max(1.0, float(np.max(np.abs(K))) if K.size else 1.0)
    if np.max(np.abs(K - K.T)) > tol * scale:
        raise ValueError("`K` is asymmetric beyond tolerance.")
    K = 0.5 * (K + K.T)
    evals = np.linalg.eigvalsh(K)
    if evals[0] < -tol * max(evals[-1], 1.0):
        raise ValueError("`K` is indefinite beyond tolerance.")
    return K


def fit_kernel_ridge(K: np.ndarray, y: np.ndarray, lam: float) -> FitResult:
    """Dual-coefficient kernel ridge fit beta = (K + lambda I)^(-1) y.

    The in-sample fit is K beta; `training_residual_sq` is ||y - K beta||^2.
    """
    if not lam > 0:
        raise ValueError("`lam` must be positive.")
    K = validate_kernel(K)
    y = np.asarray(y, dtype=float).ravel()
    if y.shape[0] != K.shape[0]:
        raise ValueError("`y` length must match the kernel size.")
    beta = np.linalg.solve(K + lam * np.eye(K.shape[0]), y)
    resid = y - K @ beta
    return FitResult(coefficients=beta, lambda_used=PenaltySpec(scalar=lam),
                     training_residual_sq=float(resid @ resid))


# ---------------------------------------------------------------------------
# Cross-validation
# ---------------------------------------------------------------------------

def loocv_errors(decomp: SpectralDecomposition, y: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Leave-one-out MSE per grid lambda via the hat-matrix shortcut.

    For H = X (X^T X + lambda I)^(-1) X^T the leave-one-out residual is
    e_i / (1 - H_ii).  A lambda with any H_ii >= 1 - 1e-12 is infeasible
    and reported as +inf rather than failing.
    """
    rho = decomp.eigenvalues[:decomp.m]
    V = decomp.left_vectors
    vty = V.T @ y
    V2 = V ** 2
    errors = np.empty(len(grid))
    for j, lam in enumerate(grid):
        shrink = rho / (rho + lam)
        h = V2 @ shrink
        if np.any(h >= 1.0 - 1e-12):
            errors[j] = np.inf
            continue
        resid = y - V @ (shrink * vty)
        errors[j] = float(np.mean((resid / (1.0 - h)) ** 2))
    return errors


def loocv_select(dataset: Dataset, grid, decomposition: SpectralDecomposition | None = None) -> CvResult:
    """Select lambda by leave-one-out cross-validation over `grid`."""
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0 or np.any(grid <= 0):
        raise ValueError("`grid` must be nonempty with positive entries.")
    if dataset.n < 2:
        raise ValueError("leave-one-out requires n >= 2.")
    decomp = decomposition if decomposition is not None else spectral_decompose(dataset.covariates)
    errors = loocv_errors(decomp, dataset.response, grid)
    return CvResult(grid=grid, cv_errors=errors,
                    selected_lambda=_select_min(grid, errors), scheme="loocv")


def kfold_select(dataset: Dataset, grid, k: int, seed: int) -> CvResult:
    """Select lambda by seeded k-fold cross-validation over `grid`.

    Folds are contiguous chunks of a seeded permutation, so the assignment
    is deterministic.  The reported error per lambda is the mean over folds
    of the fold validation MSE.
    """
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0 or np.any(grid <= 0):
        raise ValueError("`grid` must be nonempty with positive entries.")
    if not (2 <= k <= dataset.n):
        raise ValueError("`k` must satisfy 2 <= k <= n.")
    perm = np.random.default_rng(seed).permutation(dataset.n)
    folds = np.array_split(perm, k)
    X, y = dataset.covariates, dataset.response
    fold_mse = np.zeros((k, grid.size))
    for f, val_idx in enumerate(folds):
        train_idx = np.setdiff1d(perm, val_idx, assume_unique=True)
        X_tr, y_tr = X[train_idx], y[train_idx]
        X_va, y_va = X[val_idx], y[val_idx]
        sub = Dataset(X_tr, y_tr, dataset.noise_variance)
        decomp = spectral_decompose(X_tr)
        for j, lam in enumerate(grid):
            fit = fit_ridge(sub, lam, decomposition=decomp)
            pred = X_va @ fit.coefficients
            fold_mse[f, j] = np.mean((pred - y_va) ** 2)
    errors = fold_mse.mean(axis=0)
    return CvResult(grid=grid, cv_errors=errors,
                    selected_lambda=_select_min(grid, errors), scheme=f"kfold({k})")
