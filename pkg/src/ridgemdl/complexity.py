"""Oracle complexity measures for ridge codes built on a known truth.

Given the eigenvalues rho_i of X^T X, the rotated truth w = U^T theta, and
the noise variance sigma^2, the per-coordinate optimal penalty is
lambda_i = sigma^2 / w_i^2 and the closed forms below follow:

- codelength-based complexity (nats per sample):
      mdl_comp = (1/2n) sum log(rho_i + sigma^2 / w_i^2)
- optimal redundancy (KL per sample of the best ridge code):
      ropt     = (1/2n) sum log(1 + rho_i w_i^2 / sigma^2)
- hyperparameter codelength (nats):
      L        = (1/2) sum log(lambda_i)
and the identity mdl_comp = ropt + L/n holds coordinate by coordinate.

Coordinates with rho_i = 0 or w_i^2 < 1e-12 * sigma^2 are excluded from the
mdl_comp and L sums (their optimal penalty diverges) and contribute zero
redundancy; the report records how many were retained.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimators import PenaltySpec
from .linalg import SpectralDecomposition

# Coordinates with w_i^2 below this multiple of sigma^2 are excluded.
SIGNAL_RTOL = 1e-12


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ComplexityReport:
    """Oracle complexity of one (design, truth, sigma^2) triple.

    Attributes
    ----------
    mdl_comp : float
        Complexity in nats per sample; equals ropt + codelength_hyper / n.
    ropt : float
        Optimal redundancy in nats per sample.
    lambda_opt : ndarray of shape (min(n, d),)
        Optimal per-coordinate penalties sigma^2 / w_i^2; +inf at excluded
        coordinates.
    codelength_hyper : float
        Hyperparameter codelength L = (1/2) sum log(lambda_i) over retained
        coordinates, in nats.
    retained, excluded : int
        Counts of coordinates kept in / dropped from the sums.
    degenerate : bool
        True when every coordinate was excluded (zero-signal warning).
    """

    mdl_comp: float
    ropt: float
    lambda_opt: np.ndarray
    codelength_hyper: float
    retained: int
    excluded: int
    degenerate: bool = False


@dataclass(frozen=True)
class RmtSpec:
    """Aspect ratio gamma = d/n and signal-to-noise ratio for the
    high-dimensional redundancy bound."""

    gamma: float
    snr: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError("`gamma` must be positive.")
        if self.snr < 0:
            raise ValueError("`snr` must be nonnegative.")


@dataclass(frozen=True)
class ScalingRegimeInput:
    """Inputs of the piecewise closed-form scaling approximations."""

    d: int
    n: int
    true_dim: int
    signal_sq: float
    noise_variance: float

    def __post_init__(self) -> None:
        if min(self.d, self.n, self.true_dim) < 1:
            raise ValueError("`d`, `n`, `true_dim` must be positive integers.")
        if not (self.signal_sq > 0 and self.noise_variance > 0):
            raise ValueError("`signal_sq` and `noise_variance` must be positive.")


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _spectrum_and_truth(decomp: SpectralDecomposition) -> tuple[np.ndarray, np.ndarray]:
    if decomp.rotated_truth is None:
        raise ValueError("`decomp` must carry a rotated truth vector; pass "
                         "`truth` to spectral_decompose.")
    m = decomp.m
    return decomp.eigenvalues[:m], decomp.rotated_truth[:m]


def _penalty_head(penalty, decomp: SpectralDecomposition) -> np.ndarray:
    """Penalty values on the first min(n, d) coordinates (sign left to callers).

    Accepts a PenaltySpec, a scalar, or a raw vector of length d or
    min(n, d); raw vectors skip PenaltySpec's positivity rule so the
    analytic formulas can be evaluated at boundary penalties.
    """
    if isinstance(penalty, PenaltySpec):
        if penalty.scalar is not None:
            lam = np.full(decomp.m, penalty.scalar)
        else:
            lam = penalty.as_vector(decomp.d)[:decomp.m]
    elif np.isscalar(penalty):
        lam = np.full(decomp.m, float(penalty))
    else:
        vec = np.asarray(penalty, dtype=float).ravel()
        if vec.shape[0] not in (decomp.d, decomp.m):
            raise ValueError(f"per-coordinate penalty has length {vec.shape[0]}, "
                             f"expected {decomp.d} or {decomp.m}.")
        lam = vec[:decomp.m]
    if not np.all(np.isfinite(lam)):
        raise ValueError("penalty entries must be finite.")
    return lam


# ---------------------------------------------------------------------------
# Oracle quantities
# ---------------------------------------------------------------------------

def oracle_complexity_report(decomp: SpectralDecomposition, noise_variance: float) -> ComplexityReport:
    """Closed-form complexity, redundancy, and optimal penalties.

    Requires `decomp.rotated_truth`.  If every coordinate is excluded the
    report carries zeros and the `degenerate` flag instead of failing.
    """
    if not noise_variance > 0:
        raise ValueError("`noise_variance` must be positive.")
    rho, w = _spectrum_and_truth(decomp)
    w2 = w ** 2
    n = decomp.n
    keep = (rho > 0) & (w2 >= SIGNAL_RTOL * noise_variance)
    lambda_opt = np.full(decomp.m, np.inf)
    lambda_opt[keep] = noise_variance / w2[keep]
    retained = int(np.count_nonzero(keep))
    if retained == 0:
        return ComplexityReport(0.0, 0.0, lambda_opt, 0.0, 0, decomp.m, degenerate=True)
    mdl = float(np.log(rho[keep] + noise_variance / w2[keep]).sum() / (2 * n))
    ropt = float(np.log1p(rho[keep] * w2[keep] / noise_variance).sum() / (2 * n))
    codelength = float(0.5 * np.log(lambda_opt[keep]).sum())
    return ComplexityReport(mdl_comp=mdl, ropt=ropt, lambda_opt=lambda_opt,
                            codelength_hyper=codelength, retained=retained,
                            excluded=decomp.m - retained)


def kl_ridge_code(decomp: SpectralDecomposition, noise_variance: float, penalty) -> float:
    """KL divergence per sample between the truth and a ridge code.

    Returns -m/(2n) + (1/2n) sum_i f_i(lambda_i) over i <= m = min(n, d),
    where f_i(lam) = (rho_i w_i^2/sigma^2 + 1) lam/(lam + rho_i)
    + log((rho_i + lam)/lam).  Any lambda_i = 0 gives +inf.
    """
    if not noise_variance > 0:
        raise ValueError("`noise_variance` must be positive.")
    rho, w = _spectrum_and_truth(decomp)
    lam = _penalty_head(penalty, decomp)
    if np.any(lam < 0):
        raise ValueError("penalty entries must be nonnegative.")
    if np.any(lam == 0):
        return np.inf
    f = (rho * w ** 2 / noise_variance + 1.0) * lam / (lam + rho) \
        + np.log((rho + lam) / lam)
    return float((f.sum() - decomp.m) / (2 * decomp.n))


def insample_mse_analytic(decomp: SpectralDecomposition, noise_variance: float, penalty) -> float:
    """Fixed-design expected in-sample MSE of a ridge fit.

    Returns (1/n) sum_i h_i(lambda_i) with
    h_i(lam) = (lam^2 rho_i w_i^2 + sigma^2 rho_i^2) / (rho_i + lam)^2;
    coordinates with rho_i = 0 contribute nothing.  lambda = 0 is allowed
    (the OLS limit h_i = sigma^2).
    """
    if not noise_variance > 0:
        raise ValueError("`noise_variance` must be positive.")
    rho, w = _spectrum_and_truth(decomp)
    lam = _penalty_head(penalty, decomp)
    if np.any(lam < 0):
        raise ValueError("penalty entries must be nonnegative.")
    nz = rho > 0
    h = np.zeros(decomp.m)
    denom = (rho[nz] + lam[nz]) ** 2
    h[nz] = (lam[nz] ** 2 * rho[nz] * w[nz] ** 2 + noise_variance * rho[nz] ** 2) / denom
    return float(h.sum() / decomp.n)


def insample_bound(decomp: SpectralDecomposition, noise_variance: float,
                   form: str = "sum") -> float:
    """Upper bound on the optimal in-sample MSE.

    Two normalizations of the bound are in circulation; both are exposed:

    - form="sum" (default): (sigma^2/n) sum_i log(1 + rho_i w_i^2/sigma^2),
      the self-contained form, guaranteed to dominate the analytic MSE at
      the optimal penalties.
    - form="scaled_redundancy": (sigma^2/n) * ropt with ropt in nats per
      sample.
    """
    if not noise_variance > 0:
        raise ValueError("`noise_variance` must be positive.")
    rho, w = _spectrum_and_truth(decomp)
    total = float(np.log1p(rho * w ** 2 / noise_variance).sum())
    if form == "sum":
        return noise_variance * total / decomp.n
    if form == "scaled_redundancy":
        return noise_variance * (total / (2 * decomp.n)) / decomp.n
    raise ValueError("`form` must be 'sum' or 'scaled_redundancy'.")


def minimax_worstcase_codelength(decomp: SpectralDecomposition, noise_variance: float,
                                 penalty) -> float:
    """Worst-case excess codelength of a ridge code, in total nats.

    Returns (n - m)/2
    + (1/2) sum_i (rho_i w_i^2/sigma^2 + 1) lambda_i/(lambda_i + rho_i)
    + (1/2) sum_i log((rho_i + lambda_i)/lambda_i), minimized coordinatewise
    by lambda_i = sigma^2 / w_i^2.  Any lambda_i = 0 gives +inf.
    """
    if not noise_variance > 0:
        raise ValueError("`noise_variance` must be positive.")
    rho, w = _spectrum_and_truth(decomp)
    lam = _penalty_head(penalty, decomp)
    if np.any(lam < 0):
        raise ValueError("penalty entries must be nonnegative.")
    if np.any(lam == 0):
        return np.inf
    quad = (rho * w ** 2 / noise_variance + 1.0) * lam / (lam + rho)
    logdet = np.log((rho + lam) / lam)
    return float((decomp.n - decomp.m) / 2 + 0.5 * quad.sum() + 0.5 * logdet.sum())


def lnml_normalizer(decomp: SpectralDecomposition, penalty) -> float:
    """Normalization constant of the penalized-likelihood universal code.

    Equals exp((1/2) sum_i log((rho_i + lambda_i)/lambda_i)); independent of
    the noise variance.
    """
    rho = decomp.eigenvalues[:decomp.m]
    lam = _penalty_head(penalty, decomp)
    if np.any(lam <= 0):
        return np.inf
    return float(np.exp(0.5 * np.log((rho + lam) / lam).sum()))


# ---------------------------------------------------------------------------
# Scaling approximations
# ---------------------------------------------------------------------------

def scaling_approximation(inp: ScalingRegimeInput, quantity: str) -> float:
    """Piecewise closed-form approximation of mdl_comp or ropt.

    Derived for isotropic N(0, 1/n) designs with an isotropically spread
    truth: rho_i is replaced by 1 (d <= n) or d/n (d > n) and w_i^2 by
    r^2 min(1/d, 1/d*), with s = r^2/sigma^2 the dimensionless signal
    ratio.  Branches are selected by the ordering of d, true_dim, and n
    (first matching interval); the resulting tables are continuous at the
    interval boundaries.
    """
    d, n, ds = inp.d, inp.n, inp.true_dim
    s = inp.signal_sq / inp.noise_variance
    if quantity == "mdl_comp":
        if ds <= n:
            if d <= ds:
                return d / (2 * n) * np.log(1 + ds / s)
            if d <= n:
                return d / (2 * n) * np.log(1 + d / s)
            return 0.5 * np.log(d * (1 / s + 1 / n))
        if d <= n:
            return d / (2 * n) * np.log(1 + ds / s)
        if d <= ds:
            return 0.5 * np.log(d / n + ds / s)
        return 0.5 * np.log(d * (1 / s + 1 / n))
    if quantity == "ropt":
        if d <= ds:
            return d / (2 * n) * np.log(1 + s / ds)
        if d <= n:
            return d / (2 * n) * np.log(1 + s / d)
        return 0.5 * np.log(1 + s / n)
    raise ValueError("`quantity` must be 'mdl_comp' or 'ropt'.")


# ---------------------------------------------------------------------------
# High-dimensional (random matrix) limit
# ---------------------------------------------------------------------------

def rmt_redundancy_bound(spec: RmtSpec) -> float:
    """Closed-form redundancy bound in the d/n -> gamma limit.

    With delta = (sqrt(snr (1+sqrt(gamma))^2 + 1)
                  - sqrt(snr (1-sqrt(gamma))^2 + 1))^2 / 4,
    returns gamma log(1+snr-delta) + log(1+gamma snr-delta) - delta/snr.
    The snr -> 0 limit is 0 (delta/snr has a removable singularity),
    returned analytically for snr < 1e-10.
    """
    gamma, snr = spec.gamma, spec.snr
    if snr < 1e-10:
        return 0.0
    root = np.sqrt(gamma)
    delta = 0.25 * (np.sqrt(snr * (1 + root) ** 2 + 1)
                    - np.sqrt(snr * (1 - root) ** 2 + 1)) ** 2
    return float(gamma * np.log(1 + snr - delta)
                 + np.log(1 + gamma * snr - delta) - delta / snr)


def mp_density(a, gamma: float):
    """Continuous part of the Marchenko-Pastur density with ratio `gamma`.

    Support is [b1, b2] = [(1-sqrt(gamma))^2, (1+sqrt(gamma))^2]; the value
    is sqrt((a-b1)(b2-a)) / (2 pi gamma a) there and 0 elsewhere (including
    a = 0; the point mass at zero is reported by :func:`mp_point_mass`).
    Accepts scalars or arrays.
    """
    if not gamma > 0:
        raise ValueError("`gamma` must be positive.")
    a = np.asarray(a, dtype=float)
    if np.any(a < 0):
        raise ValueError("`a` must be nonnegative.")
    b1 = (1 - np.sqrt(gamma)) ** 2
    b2 = (1 + np.sqrt(gamma)) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.sqrt(np.clip(a - b1, 0, None) * np.clip(b2 - a, 0, None)) \
            / (2 * np.pi * gamma * a)
    val = np.where(a > 0, val, 0.0)
    out = np.where((a >= b1) & (a <= b2), val, 0.0)
    return float(out) if out.ndim == 0 else out


def mp_point_mass(gamma: float) -> float:
    """Mass of the Marchenko-Pastur law at zero: max(0, 1 - 1/gamma)."""
    if not gamma > 0:
        raise ValueError("`gamma` must be positive.")
    return max(0.0, 1.0 - 1.0 / gamma)
