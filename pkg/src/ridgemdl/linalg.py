"""Spectral decompositions of Gram matrices and seeded synthetic data.

Every closed form in this package lives in the eigenbasis of the Gram matrix
X^T X: its eigenvalues rho_i, the right eigenvectors U, the paired left
vectors V of X, and the rotated truth w = U^T theta.  This module builds that
coordinate system and provides the deterministic design/truth/response
generators used by the experiment harnesses.

Conventions
-----------
- Eigenvalues are sorted nonincreasing; entries below RANK_RTOL times the
  largest eigenvalue are snapped to exactly zero, and entries beyond index
  min(n, d) are exactly zero.
- Each column of U has its largest-magnitude entry made positive, so repeated
  decompositions of the same matrix are bit-identical.
- All generators are pure functions of their spec: same spec, same output.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

# Relative threshold below which an eigenvalue is treated as exactly zero.
RANK_RTOL = 1e-12

DESIGN_KINDS = ("gaussian_iid", "decaying", "spike", "cosine")
ROW_SCALES = ("unit_variance", "inv_n_variance")


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Dataset:
    """A covariate matrix, response vector, and noise-variance assumption.

    Parameters
    ----------
    covariates : ndarray of shape (n, d)
        Covariate matrix X.
    response : ndarray of shape (n,)
        Response vector y.
    noise_variance : float, default 1.0
        Assumed noise variance sigma^2 (must be positive).
    """

    covariates: np.ndarray
    response: np.ndarray
    noise_variance: float = 1.0

    def __post_init__(self) -> None:
        X = np.atleast_2d(np.asarray(self.covariates, dtype=float))
        y = np.asarray(self.response, dtype=float).ravel()
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("`covariates` must be a matrix with n >= 1 and d >= 1.")
        if y.shape[0] != X.shape[0]:
            raise ValueError("`response` length must equal the covariate row count.")
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
            raise ValueError("`covariates` and `response` must be finite.")
        if not np.isfinite(self.noise_variance) or self.noise_variance <= 0:
            raise ValueError("`noise_variance` must be a positive real.")
        object.__setattr__(self, "covariates", X)
        object.__setattr__(self, "response", y)
        object.__setattr__(self, "noise_variance", float(self.noise_variance))

    @property
    def n(self) -> int:
        return self.covariates.shape[0]

    @property
    def d(self) -> int:
        return self.covariates.shape[1]


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenstructure of X^T X plus the (optional) rotated truth vector.

    Attributes
    ----------
    eigenvectors : ndarray of shape (d, d)
        Orthonormal matrix U whose columns are eigenvectors of X^T X.
    eigenvalues : ndarray of shape (d,)
        Nonincreasing, nonnegative eigenvalues rho; exactly zero beyond
        index min(n, d).
    left_vectors : ndarray of shape (n, min(n, d))
        Paired left vectors V of X (columns for zero eigenvalues are
        zero-filled in the n >= d path).
    rotated_truth : ndarray of shape (d,), optional
        w = U^T theta_tilde, present only when a truth vector was supplied
        to :func:`spectral_decompose`.
    """

    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    left_vectors: np.ndarray
    rotated_truth: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.left_vectors.shape[0]

    @property
    def d(self) -> int:
        return self.eigenvectors.shape[0]

    @property
    def m(self) -> int:
        """min(n, d): the number of possibly nonzero eigenvalues."""
        return min(self.n, self.d)


@dataclass(frozen=True)
class DesignSpec:
    """Specification of a synthetic covariate design.

    Parameters
    ----------
    kind : {"gaussian_iid", "decaying", "spike", "cosine"}
        Row distribution: N(0, I); N(0, diag(1, 2^-alpha, ..., d^-alpha));
        N(0, diag(16 x s, 1 x (d-s))); or A @ B with A standard normal and
        B_ii = |cos i| for even i (1-based), 0 otherwise.
    n, d : int
        Sample size and dimension.
    alpha : float, optional
        Decay exponent (required for kind="decaying", alpha >= 0).
    s : int, optional
        Spike count (required for kind="spike", 1 <= s <= d).
    row_scale : {"unit_variance", "inv_n_variance"}
        Entry scale; "inv_n_variance" multiplies the matrix by 1/sqrt(n) so
        columns have expected squared norm one.
    seed : int
        64-bit seed; generation is deterministic given the spec.
    """

    kind: str
    n: int
    d: int
    alpha: float | None = None
    s: int | None = None
    row_scale: str = "unit_variance"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in DESIGN_KINDS:
            raise ValueError(f"`kind` must be one of {DESIGN_KINDS}, got {self.kind!r}.")
        if self.n < 1 or self.d < 1:
            raise ValueError("`n` and `d` must be positive integers.")
        if self.kind == "decaying":
            if self.alpha is None or self.alpha < 0:
                raise ValueError("`alpha` must be provided and >= 0 for the decaying design.")
        if self.kind == "spike":
            if self.s is None or not (1 <= self.s <= self.d):
                raise ValueError("`s` must satisfy 1 <= s <= d for the spike design.")
        if self.row_scale not in ROW_SCALES:
            raise ValueError(f"`row_scale` must be one of {ROW_SCALES}.")


@dataclass(frozen=True)
class TruthSpec:
    """Specification of a synthetic truth vector theta*.

    The vector has `true_dim` i.i.d. standard normal entries rescaled to
    Euclidean norm `norm` exactly.
    """

    true_dim: int
    norm: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.true_dim < 1:
            raise ValueError("`true_dim` must be a positive integer.")
        if not self.norm > 0:
            raise ValueError("`norm` must be positive.")


# ---------------------------------------------------------------------------
# Spectral decomposition
# ---------------------------------------------------------------------------

def _snap_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Clip negatives and snap entries below RANK_RTOL * max to exact zero."""
    rho = np.clip(rho, 0.0, None)
    top = rho.max(initial=0.0)
    if top > 0.0:
        rho[rho < RANK_RTOL * top] = 0.0
    return rho


def _fix_column_signs(U: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry of each column positive (in place).

    Returns the multiplicative sign applied to each column so paired
    matrices can be flipped consistently.
    """
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    U *= signs
    return signs


def _complete_orthonormal(U_k: np.ndarray, d: int) -> np.ndarray:
    """Extend d x k orthonormal columns to a full d x d orthonormal matrix."""
    k = U_k.shape[1]
    if k == d:
        return U_k
    if k == 0:
        return np.eye(d)
    Q, _ = np.linalg.qr(U_k, mode="complete")
    # The leading k columns of Q span col(U_k); replace them with U_k itself
    # so the caller's eigenvector alignment survives exactly.
    Q[:, :k] = U_k
    return Q


def spectral_decompose(X: np.ndarray, truth: np.ndarray | None = None) -> SpectralDecomposition:
    """Eigendecompose X^T X, routing through the smaller Gram matrix.

    Parameters
    ----------
    X : ndarray of shape (n, d)
        Finite design matrix.
    truth : ndarray, optional
        Truth vector of any length; it is passed through
        :func:`project_truth` to length d and rotated into the eigenbasis
        (stored as ``rotated_truth``).

    Returns
    -------
    SpectralDecomposition
        With U orthonormal (largest-magnitude entry of each column
        positive), rho nonincreasing and exactly zero beyond min(n, d),
        and V the paired left vectors.  For d > n the decomposition is
        computed through the n x n Gram X X^T and lifted, which costs
        O(n^2 d) instead of O(d^2 n).

    Raises
    ------
    ValueError
        If X is not a finite two-dimensional array.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("`X` must be a two-dimensional matrix.")
    if not np.all(np.isfinite(X)):
        raise ValueError("`X` must contain only finite entries.")
    n, d = X.shape
    m = min(n, d)

    if d <= n:
        rho, U = np.linalg.eigh(X.T @ X)
        rho = _snap_eigenvalues(rho[::-1].copy())
        U = np.ascontiguousarray(U[:, ::-1])
        _fix_column_signs(U)
        V = np.zeros((n, m))
        nz = rho[:m] > 0
        if np.any(nz):
            V[:, nz] = (X @ U[:, :m][:, nz]) / np.sqrt(rho[:m][nz])
    else:
        rho_n, V = np.linalg.eigh(X @ X.T)
        rho_n = _snap_eigenvalues(rho_n[::-1].copy())
        V = np.ascontiguousarray(V[:, ::-1])
        k = int(np.count_nonzero(rho_n))
        U_k = (X.T @ V[:, :k]) / np.sqrt(rho_n[:k])
        # Re-orthonormalize the lifted columns; R is within rounding of the
        # identity, so the sign of its diagonal keeps the alignment.
        if k > 0:
            Q_k, R_k = np.linalg.qr(U_k)
            diag_signs = np.sign(np.diag(R_k))
            diag_signs[diag_signs == 0] = 1.0
            U_k = Q_k * diag_signs
            signs = _fix_column_signs(U_k)
            V[:, :k] *= signs
        U = _complete_orthonormal(U_k, d)
        _fix_column_signs(U[:, k:])
        rho = np.concatenate([rho_n, np.zeros(d - n)])

    rho[m:] = 0.0
    w = None
    if truth is not None:
        w = U.T @ project_truth(truth, d)
    return SpectralDecomposition(eigenvectors=U, eigenvalues=rho, left_vectors=V, rotated_truth=w)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def generate_design(spec: DesignSpec) -> np.ndarray:
    """Draw an n x d design matrix according to `spec` (deterministic)."""
    rng = np.random.default_rng(spec.seed)
    Z = rng.standard_normal((spec.n, spec.d))
    j = np.arange(1, spec.d + 1, dtype=float)
    if spec.kind == "gaussian_iid":
        X = Z
    elif spec.kind == "decaying":
        X = Z * j ** (-spec.alpha / 2.0)
    elif spec.kind == "spike":
        scale = np.where(j <= spec.s, 4.0, 1.0)
        X = Z * scale
    else:  # cosine
        b = np.where(j % 2 == 0, np.abs(np.cos(j)), 0.0)
        X = Z * b
    if spec.row_scale == "inv_n_variance":
        X = X / np.sqrt(spec.n)
    return X


def generate_truth(spec: TruthSpec) -> np.ndarray:
    """Draw theta* with `true_dim` entries and exact Euclidean norm `norm`."""
    rng = np.random.default_rng(spec.seed)
    theta = rng.standard_normal(spec.true_dim)
    return theta * (spec.norm / np.linalg.norm(theta))


def project_truth(theta: np.ndarray, d: int) -> np.ndarray:
    """Restrict or zero-pad a truth vector to length d.

    For d below the truth dimension the first d coordinates are kept; for
    d at or above it the vector is padded with zeros (norm preserved).
    """
    theta = np.asarray(theta, dtype=float).ravel()
    if d < 1:
        raise ValueError("`d` must be a positive integer.")
    if d < theta.shape[0]:
        return theta[:d].copy()
    return np.concatenate([theta, np.zeros(d - theta.shape[0])])


def sample_linear_model(X: np.ndarray, theta: np.ndarray, noise_variance: float,
                        seed: int) -> np.ndarray:
    """Draw y = X theta + eps with eps i.i.d. N(0, noise_variance)."""
    X = np.asarray(X, dtype=float)
    theta = np.asarray(theta, dtype=float).ravel()
    if X.ndim != 2 or X.shape[1] != theta.shape[0]:
        raise ValueError("`theta` length must equal the column count of `X`.")
    if not noise_variance > 0:
        raise ValueError("`noise_variance` must be positive.")
    rng = np.random.default_rng(seed)
    return X @ theta + rng.normal(0.0, np.sqrt(noise_variance), size=X.shape[0])


def replace_spec(spec, **changes):
    """dataclasses.replace passthrough, exported for experiment plumbing."""
    return dataclasses.replace(spec, **changes)
