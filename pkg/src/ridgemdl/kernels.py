"""Kernel matrices, the exact kernel-code KL, and decay-regime rate bounds.

The kernel analogue of the linear complexity machinery works entirely from
the eigenvalues rho_i of the n x n kernel matrix K (and, for the exact KL,
the truth values rotated into K's eigenbasis).  The complexity bound

    inf_{lam > 0}  lam SNR^2 / (2n) + (1/2n) sum_i log(1 + rho_i / lam)

needs only the spectrum and the squared Hilbert-norm signal-to-noise ratio
SNR^2 = ||f*||_H^2 / sigma^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimators import validate_kernel
from .optimize import log_grid, minimize_on_log_grid

KERNEL_KINDS = ("rbf", "polynomial", "precomputed")
DECAY_KINDS = ("gaussian_like", "sobolev", "ntk_like")

# Grid used to bracket the complexity-bound infimum before refinement.
BOUND_GRID_LO, BOUND_GRID_HI, BOUND_GRID_POINTS = 1e-8, 1e4, 60


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelSpec:
    """Kernel construction recipe.

    kind="rbf" uses K_ij = exp(-||x_i - x_j||^2 / (2 bandwidth^2));
    kind="polynomial" uses K_ij = (x_i . x_j + offset)^degree;
    kind="precomputed" loads a dense square comma-separated matrix from
    `path` (no header; symmetry enforced on load).  With `normalize` the
    matrix is rescaled so trace(K) = n.
    """

    kind: str
    bandwidth: float | None = None
    degree: int | None = None
    offset: float = 0.0
    path: str | None = None
    normalize: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"`kind` must be one of {KERNEL_KINDS}, got {self.kind!r}.")
        if self.kind == "rbf" and not (self.bandwidth is not None and self.bandwidth > 0):
            raise ValueError("`bandwidth` must be positive for the rbf kernel.")
        if self.kind == "polynomial" and not (self.degree is not None and self.degree >= 1):
            raise ValueError("`degree` must be at least 1 for the polynomial kernel.")
        if self.kind == "precomputed" and not self.path:
            raise ValueError("`path` is required for a precomputed kernel.")


@dataclass(frozen=True, eq=False)
class KernelComplexityInput:
    """Spectrum-level inputs of the kernel complexity quantities.

    Attributes
    ----------
    eigenvalues : ndarray of shape (n,)
        Nonincreasing nonnegative eigenvalues of the kernel matrix.
    hilbert_norm_sq_over_sigma_sq : float, optional
        SNR^2 = ||f*||_H^2 / sigma^2, required by the complexity bound.
    truth_values : ndarray, optional
        f* evaluated at the sample points (sample space).
    rotated_truth : ndarray, optional
        alpha = U^T truth_values in K's eigenbasis; filled by
        :meth:`from_kernel` and required by the exact KL.
    noise_variance : float, optional
        sigma^2 accompanying `truth_values`.
    """

    eigenvalues: np.ndarray
    hilbert_norm_sq_over_sigma_sq: float | None = None
    truth_values: np.ndarray | None = None
    rotated_truth: np.ndarray | None = None
    noise_variance: float | None = None

    def __post_init__(self) -> None:
        rho = np.asarray(self.eigenvalues, dtype=float).ravel()
        if rho.size == 0 or not np.all(np.isfinite(rho)) or np.any(rho < 0):
            raise ValueError("`eigenvalues` must be finite and nonnegative.")
        if np.any(np.diff(rho) > 0):
            # Normalize to nonincreasing order; keep (rho_i, alpha_i) pairs
            # together when a rotated truth accompanies the spectrum.
            order = np.argsort(rho, kind="stable")[::-1]
            rho = rho[order]
            if self.rotated_truth is not None:
                alpha = np.asarray(self.rotated_truth, dtype=float).ravel()
                if alpha.shape[0] != rho.shape[0]:
                    raise ValueError("`rotated_truth` length must match "
                                     "`eigenvalues`.")
                object.__setattr__(self, "rotated_truth", alpha[order])
        snr2 = self.hilbert_norm_sq_over_sigma_sq
        if snr2 is not None and (not np.isfinite(snr2) or snr2 < 0):
            raise ValueError("`hilbert_norm_sq_over_sigma_sq` must be >= 0.")
        if self.noise_variance is not None and not self.noise_variance > 0:
            raise ValueError("`noise_variance` must be positive.")
        object.__setattr__(self, "eigenvalues", rho)

    @classmethod
    def from_kernel(cls, K: np.ndarray, snr_sq: float | None = None,
                    truth_values: np.ndarray | None = None,
                    noise_variance: float | None = None) -> "KernelComplexityInput":
        """Eigendecompose K and rotate the optional truth into its basis."""
        K = validate_kernel(K)
        evals, evecs = np.linalg.eigh(K)
        order = np.argsort(evals)[::-1]
        rho = np.clip(evals[order], 0.0, None)
        alpha = None
        if truth_values is not None:
            y_star = np.asarray(truth_values, dtype=float).ravel()
            if y_star.shape[0] != K.shape[0]:
                raise ValueError("`truth_values` length must match the kernel size.")
            if noise_variance is None:
                raise ValueError("`noise_variance` is required with `truth_values`.")
            alpha = evecs[:, order].T @ y_star
        return cls(eigenvalues=rho, hilbert_norm_sq_over_sigma_sq=snr_sq,
                   truth_values=truth_values, rotated_truth=alpha,
                   noise_variance=noise_variance)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class KernelBoundResult:
    """Value and minimizer of the kernel complexity bound."""

    value: float
    lambda_opt: float
    at_grid_edge: bool
    adjusted_value: float | None = None


@dataclass(frozen=True)
class DecayRegime:
    """Eigenvalue-decay regime for the closed-form rate bounds.

    kind="gaussian_like" models near-exponential spectra on d-dimensional
    inputs; kind="sobolev" models polynomial decay i^(-2 omega/d) with
    smoothness omega > d/2; kind="ntk_like" models decay i^(-(d+a)) with
    d + a > 1.  `snr` is the linear ratio ||f*||_H / sigma.
    """

    kind: str
    n: int
    snr: float
    d: int = 1
    omega: float | None = None
    a: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in DECAY_KINDS:
            raise ValueError(f"`kind` must be one of {DECAY_KINDS}, got {self.kind!r}.")
        if self.n < 1 or self.d < 1:
            raise ValueError("`n` and `d` must be positive integers.")
        if not self.snr > 0:
            raise ValueError("`snr` must be positive.")
        if self.kind == "sobolev":
            if self.omega is None or not self.omega > self.d / 2:
                raise ValueError("sobolev requires `omega` > d/2.")
        if self.kind == "ntk_like":
            if self.a is None or not self.d + self.a > 1:
                raise ValueError("ntk_like requires d + `a` > 1.")


# ---------------------------------------------------------------------------
# Kernel construction
# ---------------------------------------------------------------------------

def build_kernel(points: np.ndarray | None, spec: KernelSpec) -> np.ndarray:
    """Build (or load) an n x n kernel matrix per `spec`.

    `points` is the n x d input matrix for the rbf/polynomial kinds and is
    ignored for precomputed kernels.
    """
    if spec.kind == "precomputed":
        K = _load_symmetric(np.loadtxt(spec.path, delimiter=",", ndmin=2))
    else:
        if points is None:
            raise ValueError("`points` are required for generated kernels.")
        X = np.atleast_2d(np.asarray(points, dtype=float))
        if not np.all(np.isfinite(X)):
            raise ValueError("`points` must be finite.")
        if spec.kind == "rbf":
            sq = np.sum(X ** 2, axis=1)
            D = np.clip(sq[:, None] + sq[None, :] - 2.0 * (X @ X.T), 0.0, None)
            np.fill_diagonal(D, 0.0)
            K = np.exp(-D / (2.0 * spec.bandwidth ** 2))
        else:  # polynomial
            K = (X @ X.T + spec.offset) ** spec.degree
        K = 0.5 * (K + K.T)
    if spec.normalize:
        tr = float(np.trace(K))
        if tr <= 0:
            raise ValueError("trace normalization requires trace(K) > 0.")
        K = K * (K.shape[0] / tr)
    return K


def _load_symmetric(K: np.ndarray) -> np.ndarray:
    """Validate squareness/symmetry of a loaded matrix and symmetrize."""
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("precomputed kernel file must hold a square matrix.")
    if not np.all(np.isfinite(K)):
        raise ValueError("precomputed kernel must be finite.")
    scale = max(1.0, float(np.max(np.abs(K))))
    if np.max(np.abs(K - K.T)) > 1e-8 * scale:
        raise ValueError("precomputed kernel is asymmetric beyond tolerance.")
    return 0.5 * (K + K.T)


# ---------------------------------------------------------------------------
# Complexity quantities
# ---------------------------------------------------------------------------

def kl_kernel_code(inp: KernelComplexityInput, lam: float) -> float:
    """Exact KL per sample between the truth and a kernel ridge code.

    With alpha the truth rotated into K's eigenbasis, returns
    (1/2n) sum_i lam/(lam + rho_i) (alpha_i^2/sigma^2 + 1)
    + (1/2n) sum_i log(rho_i/lam + 1) - 1/2.  lam = 0 gives +inf.
    """
    if inp.rotated_truth is None or inp.noise_variance is None:
        raise ValueError("`inp` must carry rotated truth values; build it "
                         "with KernelComplexityInput.from_kernel.")
    if lam < 0:
        raise ValueError("`lam` must be nonnegative.")
    if lam == 0:
        return np.inf
    rho = inp.eigenvalues
    alpha = np.asarray(inp.rotated_truth, dtype=float).ravel()
    if alpha.shape[0] != rho.shape[0]:
        raise ValueError("`rotated_truth` length must match `eigenvalues`.")
    n, s2 = inp.n, inp.noise_variance
    quad = lam / (lam + rho) * (alpha ** 2 / s2 + 1.0)
    return float(quad.sum() / (2 * n) + np.log1p(rho / lam).sum() / (2 * n) - 0.5)


def kernel_bound_objective(inp: KernelComplexityInput, lam: float) -> float:
    """The complexity-bound objective lam SNR^2/(2n) + (1/2n) sum log(1 + rho/lam)."""
    snr2 = inp.hilbert_norm_sq_over_sigma_sq
    if snr2 is None:
        raise ValueError("`inp` must carry hilbert_norm_sq_over_sigma_sq.")
    if not lam > 0:
        raise ValueError("`lam` must be positive.")
    n = inp.n
    return float(lam * snr2 / (2 * n) + np.log1p(inp.eigenvalues / lam).sum() / (2 * n))


def kernel_mdl_bound(inp: KernelComplexityInput,
                     include_lambda_codelength: bool = False) -> KernelBoundResult:
    """Minimize the kernel complexity bound over lambda.

    The infimum is located on a 60-point log grid spanning
    [1e-8 rho_max, 1e4 rho_max] and refined by golden-section search to
    1e-8 relative tolerance in log lambda; endpoint minima are returned
    unrefined with `at_grid_edge` set.  An all-zero spectrum returns value
    0 at the grid floor.  With `include_lambda_codelength` the off-by-
    default `adjusted_value` field carries value + log(lambda_opt)/n.
    """
    snr2 = inp.hilbert_norm_sq_over_sigma_sq
    if snr2 is None:
        raise ValueError("`inp` must carry hilbert_norm_sq_over_sigma_sq.")
    rho_max = float(inp.eigenvalues.max(initial=0.0))
    if rho_max == 0.0:
        return KernelBoundResult(value=0.0, lambda_opt=0.0, at_grid_edge=True)
    grid = log_grid(BOUND_GRID_LO * rho_max, BOUND_GRID_HI * rho_max, BOUND_GRID_POINTS)
    res = minimize_on_log_grid(lambda lam: kernel_bound_objective(inp, lam), grid)
    adjusted = None
    if include_lambda_codelength:
        adjusted = res.value + np.log(res.x) / inp.n
    return KernelBoundResult(value=res.value, lambda_opt=res.x,
                             at_grid_edge=res.at_grid_edge, adjusted_value=adjusted)


# ---------------------------------------------------------------------------
# Decay-regime rates
# ---------------------------------------------------------------------------

def c_alpha(n: int, alpha: float) -> float:
    """Partial power sum sum_{j=1..n} j^(-2 alpha), the normalizer used for
    synthetic power-law spectra rho_i = c_alpha * n * i^(-2 alpha)."""
    if n < 1:
        raise ValueError("`n` must be a positive integer.")
    j = np.arange(1, n + 1, dtype=float)
    return float(np.sum(j ** (-2.0 * alpha)))


def power_law_eigenvalues(n: int, alpha: float) -> np.ndarray:
    """Synthetic spectrum rho_i = c_alpha(n, alpha) * n * i^(-2 alpha)."""
    i = np.arange(1, n + 1, dtype=float)
    return c_alpha(n, alpha) * n * i ** (-2.0 * alpha)


def decay_regime_bound(regime: DecayRegime) -> float:
    """Closed-form complexity rate for a decay regime.

    gaussian_like: d log^2(n d SNR^2) / n.
    sobolev (alpha = omega/d): C (log(n SNR^2)/n)^(2 omega/(2 omega + d)).
    ntk_like (alpha = (d+a)/2): C (log(n SNR^2)/n)^((d+a)/(d+a+1)).
    C = alpha^(2 alpha/(1+2 alpha)) * SNR^(2/(1+2 alpha)).  The sobolev and
    ntk_like branches require n SNR^2 > 1 (the log must be positive).
    """
    n, snr, d = regime.n, regime.snr, regime.d
    snr2 = snr ** 2
    if regime.kind == "gaussian_like":
        return float(d * np.log(n * d * snr2) ** 2 / n)
    if n * snr2 <= 1.0:
        raise ValueError("sobolev/ntk_like rates require n * snr^2 > 1.")
    if regime.kind == "sobolev":
        alpha = regime.omega / d
        exponent = 2 * regime.omega / (2 * regime.omega + d)
    else:  # ntk_like
        alpha = 0.5 * (d + regime.a)
        exponent = (d + regime.a) / (d + regime.a + 1)
    constant = alpha ** (2 * alpha / (1 + 2 * alpha)) * snr ** (2 / (1 + 2 * alpha))
    return float(constant * (np.log(n * snr2) / n) ** exponent)
