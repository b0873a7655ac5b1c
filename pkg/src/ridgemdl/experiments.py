"""Seeded experiment harnesses and dataset ingestion.

Three protocols, each emitting a flat list of aggregated curve points:

- bias/variance decomposition of ridge-type estimators across fit
  dimensions, with the design and truth fixed and only the training noise
  redrawn;
- complexity scaling curves (exact spectrum-based values next to their
  closed-form piecewise approximations) across fit dimensions;
- penalty-selector comparisons (codelength criterion vs cross-validation
  vs baselines) on simulated or ingested data across d/n ratios.

All randomness is derived from explicit seeds; identical configs produce
identical tables.  Seed layout: training-noise replicate r uses seed
base_seed + r; test noise uses base_seed + 1_000_000 (+ r where redrawn
per replicate, offset 2_000_000); fold assignment and row subsampling use
offset 3_000_000; redrawn designs use design.seed + r and redrawn truths
truth.seed + r; test designs reuse the design seed at offset 1
(fixed-design protocols) or 1_000_000 + r (redrawn protocols).  Each
consumer additionally mixes a role tag into its seed sequence (except the
design draws, which use DesignSpec seeds verbatim so they can be
reproduced with generate_design), so streams with different roles stay
independent even when their seed integers coincide — e.g. with the
all-zero defaults, replicate-0 noise does not replay the design entries.
"""

from __future__ import annotations

import csv
import dataclasses
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from .estimators import PenaltySpec, fit_ridge, kfold_select, loocv_select
from .linalg import (Dataset, DesignSpec, SpectralDecomposition, TruthSpec,
                     generate_design, generate_truth, project_truth,
                     spectral_decompose)
from .complexity import ScalingRegimeInput, oracle_complexity_report, scaling_approximation
from .practical import resolve_grid, select_lambda_prac_linear

ESTIMATORS = ("ols", "ridge_cv", "ridge_prac", "zero")
COMPARISON_SCHEMES = ("ridge_prac", "ridge_loocv", "ridge_kfold(5)", "ols", "zero")
SIM_TEST_SIZE = 1000

_TEST_NOISE_OFFSET = 1_000_000
_TEST_NOISE_REPLICATE_OFFSET = 2_000_000
_FOLD_SEED_OFFSET = 3_000_000

# Role tags mixed into seed sequences so that streams with different roles
# never coincide even when their seed integers do.
_TAG_TRUTH = 101
_TAG_TRAIN_NOISE = 102
_TAG_TEST_NOISE = 103
_TAG_FOLDS = 104
_TAG_SUBSAMPLE = 105


def _derived_seed(root: int, tag: int) -> int:
    """Deterministic 63-bit seed for consumers that take a plain integer."""
    state = np.random.SeedSequence([int(root), int(tag)]).generate_state(1, np.uint64)
    return int(state[0] >> np.uint64(1))


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """Shared configuration of the simulated experiment harnesses.

    `d_grid` lists the fit dimensions (each at most design.d; the
    estimators see the first d columns).  `estimators` is an ordered
    subset of ESTIMATORS.  `grid` is a preset name or an explicit penalty
    grid used by the cross-validated and codelength-selected estimators.
    """

    design: DesignSpec
    truth: TruthSpec
    noise_variance: float
    d_grid: tuple[int, ...]
    n_replicates: int = 50
    base_seed: int = 0
    estimators: tuple[str, ...] = ESTIMATORS
    grid: str | np.ndarray = "sim20"

    def __post_init__(self) -> None:
        if not self.noise_variance > 0:
            raise ValueError("`noise_variance` must be positive.")
        d_grid = tuple(int(d) for d in np.atleast_1d(np.asarray(self.d_grid)).ravel())
        if len(d_grid) == 0:
            raise ValueError("`d_grid` must be non-empty.")
        if any(d < 1 or d > self.design.d for d in d_grid):
            raise ValueError("`d_grid` entries must lie in [1, design.d].")
        if self.n_replicates < 1:
            raise ValueError("`n_replicates` must be a positive integer.")
        estimators = _ordered_subset(self.estimators, ESTIMATORS, "estimators")
        resolve_grid(self.grid)  # validate eagerly
        object.__setattr__(self, "d_grid", d_grid)
        object.__setattr__(self, "estimators", estimators)
        object.__setattr__(self, "noise_variance", float(self.noise_variance))


@dataclass(frozen=True)
class CurvePoint:
    """One aggregated cell of an experiment table.

    Optional fields are None when the producing protocol does not compute
    them; `*_stderr` companions hold the unbiased standard error over
    replicates (0.0 for a single replicate).
    """

    d: int
    n: int
    estimator: str
    test_mse: float | None = None
    test_mse_stderr: float | None = None
    bias: float | None = None
    variance: float | None = None
    mdl_comp: float | None = None
    mdl_comp_stderr: float | None = None
    ropt: float | None = None
    ropt_stderr: float | None = None
    approx_ropt: float | None = None
    approx_ropt_stderr: float | None = None
    selected_lambda: float | None = None
    selected_lambda_stderr: float | None = None

    def __post_init__(self) -> None:
        if self.test_mse is not None and self.test_mse < 0:
            raise ValueError("`test_mse` must be nonnegative.")
        if self.variance is not None and self.variance < 0:
            raise ValueError("`variance` must be nonnegative.")
        if self.estimator == "zero" and self.variance not in (None, 0.0):
            raise ValueError("the zero estimator has no variance.")


@dataclass(frozen=True)
class IngestReport:
    """Bookkeeping from ingest_dataset."""

    target: str
    feature_names: tuple[str, ...]
    rows_read: int
    rows_dropped: int
    columns_dropped: tuple[str, ...]
    standardized: bool


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _ordered_subset(given: Sequence[str], allowed: tuple[str, ...],
                    name: str) -> tuple[str, ...]:
    seen: list[str] = []
    for label in given:
        if label not in allowed:
            raise ValueError(f"`{name}` entries must be among {allowed}, got {label!r}.")
        if label not in seen:
            seen.append(label)
    if not seen:
        raise ValueError(f"`{name}` must be non-empty.")
    return tuple(seen)


def _mean_stderr(values: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        return float(arr.mean()), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / np.sqrt(arr.size))


def _opt_mean_stderr(values: Sequence[float]) -> tuple[float | None, float | None]:
    if len(values) == 0:
        return None, None
    return _mean_stderr(values)


def _fit_estimator(label: str, dataset: Dataset, grid: np.ndarray,
                   decomp: SpectralDecomposition, fold_seed: int,
                   ) -> tuple[np.ndarray, float | None, float | None]:
    """Fit one estimator label; returns (coefficients, lambda, approx_ropt)."""
    if label == "zero":
        return np.zeros(dataset.d), None, None
    if label == "ols":
        fit = fit_ridge(dataset, PenaltySpec(scalar=0.0), decomposition=decomp)
        return fit.coefficients, 0.0, None
    if label in ("ridge_cv", "ridge_loocv"):
        cv = loocv_select(dataset, grid, decomposition=decomp)
        fit = fit_ridge(dataset, PenaltySpec(scalar=cv.selected_lambda),
                        decomposition=decomp)
        return fit.coefficients, cv.selected_lambda, None
    if label == "ridge_kfold(5)":
        cv = kfold_select(dataset, grid, k=5, seed=fold_seed)
        fit = fit_ridge(dataset, PenaltySpec(scalar=cv.selected_lambda),
                        decomposition=decomp)
        return fit.coefficients, cv.selected_lambda, None
    if label == "ridge_prac":
        sel = select_lambda_prac_linear(dataset, grid, decomposition=decomp)
        return sel.fit.coefficients, sel.selected_lambda, sel.approx_ropt
    raise ValueError(f"unknown estimator label {label!r}.")


def _noise(seed: int, tag: int, sigma2: float, size: int) -> np.ndarray:
    rng = np.random.default_rng([int(seed), int(tag)])
    return rng.normal(0.0, np.sqrt(sigma2), size)


# ---------------------------------------------------------------------------
# Bias/variance protocol
# ---------------------------------------------------------------------------

def run_bias_variance(config: ExperimentConfig,
                      test_size: int = SIM_TEST_SIZE) -> list[CurvePoint]:
    """Bias/variance decomposition across fit dimensions.

    The design, the truth, and the noiseless test responses are fixed once
    per config; training noise is redrawn per replicate.  Per (d,
    estimator): bias = ||y*_test - mean prediction||^2 / n_test, variance
    = mean over replicates of ||prediction - mean prediction||^2 / n_test,
    and test_mse averages ||y_test - prediction||^2 / n_test against the
    noisy test responses.
    """
    if test_size < 1:
        raise ValueError("`test_size` must be a positive integer.")
    sigma2 = config.noise_variance
    X = generate_design(config.design)
    truth_spec = dataclasses.replace(
        config.truth, seed=_derived_seed(config.truth.seed, _TAG_TRUTH))
    theta = project_truth(generate_truth(truth_spec), config.design.d)
    signal_train = X @ theta
    X_test = generate_design(dataclasses.replace(
        config.design, n=test_size, seed=config.design.seed + 1))
    signal_test = X_test @ theta
    y_test = signal_test + _noise(config.base_seed + _TEST_NOISE_OFFSET,
                                  _TAG_TEST_NOISE, sigma2, test_size)
    reps = config.n_replicates
    responses = [signal_train + _noise(config.base_seed + r, _TAG_TRAIN_NOISE,
                                       sigma2, config.design.n)
                 for r in range(reps)]
    grid = resolve_grid(config.grid)

    points: list[CurvePoint] = []
    for d in config.d_grid:
        X_d, X_test_d = X[:, :d], X_test[:, :d]
        decomp = spectral_decompose(X_d)
        for label in config.estimators:
            predictions = np.empty((reps, test_size))
            mses, lambdas, ropts = [], [], []
            for r in range(reps):
                ds = Dataset(X_d, responses[r], sigma2)
                coef, lam, aropt = _fit_estimator(
                    label, ds, grid, decomp,
                    fold_seed=_derived_seed(config.base_seed + _FOLD_SEED_OFFSET + r,
                                            _TAG_FOLDS))
                predictions[r] = X_test_d @ coef
                mses.append(float(np.mean((y_test - predictions[r]) ** 2)))
                if lam is not None:
                    lambdas.append(lam)
                if aropt is not None:
                    ropts.append(aropt)
            center = predictions.mean(axis=0)
            bias = float(np.mean((signal_test - center) ** 2))
            variance = float(np.mean((predictions - center) ** 2))
            mse_mean, mse_se = _mean_stderr(mses)
            lam_mean, lam_se = _opt_mean_stderr(lambdas)
            ar_mean, ar_se = _opt_mean_stderr(ropts)
            points.append(CurvePoint(
                d=d, n=config.design.n, estimator=label,
                test_mse=mse_mean, test_mse_stderr=mse_se,
                bias=bias, variance=variance,
                approx_ropt=ar_mean, approx_ropt_stderr=ar_se,
                selected_lambda=lam_mean, selected_lambda_stderr=lam_se))
    return points


# ---------------------------------------------------------------------------
# Complexity scaling protocol
# ---------------------------------------------------------------------------

def run_mdl_scaling(config: ExperimentConfig) -> list[CurvePoint]:
    """Exact complexity curves next to their closed-form approximations.

    Per replicate a fresh design and truth are drawn (seeds offset by the
    replicate index); per fit dimension the first d columns and the
    truncated truth feed the oracle complexity report.  No response noise
    is involved: the reported quantities depend only on X, theta*, and
    sigma^2.  Rows labeled "oracle" carry replicate means; rows labeled
    "scaling_approx" carry the deterministic piecewise approximation.
    """
    sigma2 = config.noise_variance
    acc: dict[int, list[tuple[float, float]]] = {d: [] for d in config.d_grid}
    for r in range(config.n_replicates):
        X = generate_design(dataclasses.replace(
            config.design, seed=config.design.seed + r))
        theta = project_truth(generate_truth(dataclasses.replace(
            config.truth,
            seed=_derived_seed(config.truth.seed + r, _TAG_TRUTH))), config.design.d)
        for d in config.d_grid:
            decomp = spectral_decompose(X[:, :d], truth=project_truth(theta, d))
            report = oracle_complexity_report(decomp, sigma2)
            acc[d].append((report.mdl_comp, report.ropt))

    points: list[CurvePoint] = []
    for d in config.d_grid:
        mdl_mean, mdl_se = _mean_stderr([a[0] for a in acc[d]])
        ropt_mean, ropt_se = _mean_stderr([a[1] for a in acc[d]])
        points.append(CurvePoint(
            d=d, n=config.design.n, estimator="oracle",
            mdl_comp=mdl_mean, mdl_comp_stderr=mdl_se,
            ropt=ropt_mean, ropt_stderr=ropt_se))
        regime = ScalingRegimeInput(
            d=d, n=config.design.n, true_dim=config.truth.true_dim,
            signal_sq=config.truth.norm ** 2, noise_variance=sigma2)
        points.append(CurvePoint(
            d=d, n=config.design.n, estimator="scaling_approx",
            mdl_comp=scaling_approximation(regime, "mdl_comp"),
            ropt=scaling_approximation(regime, "ropt")))
    return points


# ---------------------------------------------------------------------------
# Selector comparison protocol
# ---------------------------------------------------------------------------

def run_selector_comparison(source: Dataset | ExperimentConfig,
                            grid: str | np.ndarray | None = None,
                            schemes: Sequence[str] = COMPARISON_SCHEMES,
                            ratios: Sequence[float] | None = None,
                            n_replicates: int | None = None,
                            base_seed: int | None = None,
                            test_fraction: float = 0.25,
                            test_size: int = SIM_TEST_SIZE) -> list[CurvePoint]:
    """Compare penalty-selection schemes by held-out test error.

    With an ExperimentConfig source, each replicate draws a fresh design,
    truth, training noise, and a fresh `test_size`-sample test set; each
    d/n ratio sets the training sample count to round(d / ratio).  With a
    Dataset source, each replicate holds out `test_fraction` of the rows
    (rounded, at least one) as the test set and subsamples the remainder
    without replacement down to round(d / ratio) training rows (capped at
    the pool size); the dataset's noise_variance feeds the codelength
    objective.  `ratios = None` keeps the natural training size.
    """
    schemes = _ordered_subset(schemes, COMPARISON_SCHEMES, "schemes")
    if ratios is not None:
        ratio_list = [float(r) for r in ratios]
        if not ratio_list or any(not np.isfinite(r) or r <= 0 for r in ratio_list):
            raise ValueError("`ratios` must be positive reals.")
    else:
        ratio_list = None

    if isinstance(source, ExperimentConfig):
        return _compare_simulated(source, grid, schemes, ratio_list,
                                  n_replicates, base_seed, test_size)
    if isinstance(source, Dataset):
        return _compare_dataset(source, grid, schemes, ratio_list,
                                n_replicates, base_seed, test_fraction)
    raise ValueError("`source` must be a Dataset or an ExperimentConfig.")


def _aggregate_cell(d: int, n: int, label: str, mses: list[float],
                    lambdas: list[float], ropts: list[float]) -> CurvePoint:
    mse_mean, mse_se = _mean_stderr(mses)
    lam_mean, lam_se = _opt_mean_stderr(lambdas)
    ar_mean, ar_se = _opt_mean_stderr(ropts)
    return CurvePoint(d=d, n=n, estimator=label,
                      test_mse=mse_mean, test_mse_stderr=mse_se,
                      approx_ropt=ar_mean, approx_ropt_stderr=ar_se,
                      selected_lambda=lam_mean, selected_lambda_stderr=lam_se)


def _evaluate_schemes(schemes: tuple[str, ...], train: Dataset,
                      X_test: np.ndarray, y_test: np.ndarray,
                      grid: np.ndarray, fold_seed: int,
                      sink: dict[str, dict[str, list[float]]]) -> None:
    decomp = spectral_decompose(train.covariates)
    for label in schemes:
        coef, lam, aropt = _fit_estimator(label, train, grid, decomp, fold_seed)
        mse = float(np.mean((y_test - X_test @ coef) ** 2))
        cell = sink[label]
        cell["mse"].append(mse)
        if lam is not None:
            cell["lam"].append(lam)
        if aropt is not None:
            cell["ropt"].append(aropt)


def _compare_simulated(config: ExperimentConfig, grid, schemes, ratios,
                       n_replicates, base_seed, test_size) -> list[CurvePoint]:
    grid_arr = resolve_grid(config.grid if grid is None else grid)
    reps = config.n_replicates if n_replicates is None else int(n_replicates)
    seed0 = config.base_seed if base_seed is None else int(base_seed)
    if reps < 1:
        raise ValueError("`n_replicates` must be a positive integer.")
    if test_size < 1:
        raise ValueError("`test_size` must be a positive integer.")
    d = config.design.d
    sigma2 = config.noise_variance
    train_sizes = ([config.design.n] if ratios is None
                   else [max(1, round(d / r)) for r in ratios])

    points: list[CurvePoint] = []
    for n_train in train_sizes:
        sink = {s: {"mse": [], "lam": [], "ropt": []} for s in schemes}
        for b in range(reps):
            X = generate_design(dataclasses.replace(
                config.design, n=n_train, seed=config.design.seed + b))
            theta = project_truth(generate_truth(dataclasses.replace(
                config.truth,
                seed=_derived_seed(config.truth.seed + b, _TAG_TRUTH))), d)
            y = X @ theta + _noise(seed0 + b, _TAG_TRAIN_NOISE, sigma2, n_train)
            X_test = generate_design(dataclasses.replace(
                config.design, n=test_size,
                seed=config.design.seed + _TEST_NOISE_OFFSET + b))
            y_test = X_test @ theta + _noise(
                seed0 + _TEST_NOISE_REPLICATE_OFFSET + b, _TAG_TEST_NOISE,
                sigma2, test_size)
            _evaluate_schemes(schemes, Dataset(X, y, sigma2), X_test, y_test,
                              grid_arr,
                              _derived_seed(seed0 + _FOLD_SEED_OFFSET + b,
                                            _TAG_FOLDS), sink)
        for label in schemes:
            cell = sink[label]
            points.append(_aggregate_cell(d, n_train, label, cell["mse"],
                                          cell["lam"], cell["ropt"]))
    return points


def _compare_dataset(dataset: Dataset, grid, schemes, ratios,
                     n_replicates, base_seed, test_fraction) -> list[CurvePoint]:
    grid_arr = resolve_grid("pmlb10" if grid is None else grid)
    reps = 3 if n_replicates is None else int(n_replicates)
    seed0 = 0 if base_seed is None else int(base_seed)
    if reps < 1:
        raise ValueError("`n_replicates` must be a positive integer.")
    if not 0 < test_fraction < 1:
        raise ValueError("`test_fraction` must lie strictly between 0 and 1.")
    n_total, d = dataset.n, dataset.d
    test_count = int(round(test_fraction * n_total))
    if test_count < 1 or test_count >= n_total:
        raise ValueError("the held-out test split is empty (or leaves no "
                         "training rows); provide more rows.")
    pool_size = n_total - test_count
    train_sizes = ([pool_size] if ratios is None
                   else [min(pool_size, max(1, round(d / r))) for r in ratios])

    points: list[CurvePoint] = []
    for n_train in train_sizes:
        sink = {s: {"mse": [], "lam": [], "ropt": []} for s in schemes}
        for b in range(reps):
            rng = np.random.default_rng([seed0 + b, _TAG_SUBSAMPLE])
            perm = rng.permutation(n_total)
            test_idx, pool = perm[:test_count], perm[test_count:]
            train_idx = pool[:n_train]
            train = Dataset(dataset.covariates[train_idx],
                            dataset.response[train_idx],
                            dataset.noise_variance)
            _evaluate_schemes(schemes, train, dataset.covariates[test_idx],
                              dataset.response[test_idx], grid_arr,
                              _derived_seed(seed0 + _FOLD_SEED_OFFSET + b,
                                            _TAG_FOLDS), sink)
        for label in schemes:
            cell = sink[label]
            points.append(_aggregate_cell(d, n_train, label, cell["mse"],
                                          cell["lam"], cell["ropt"]))
    return points


# ---------------------------------------------------------------------------
# Dataset ingestion
# ---------------------------------------------------------------------------

def ingest_dataset(path: str, target_column: str, standardize: bool = True,
                   noise_variance: float = 1.0, with_report: bool = False,
                   ) -> Dataset | tuple[Dataset, IngestReport]:
    """Load a delimited text file (header row required) into a Dataset.

    The named target column becomes the response; all other columns become
    covariates.  Cells that fail numeric parsing count as missing; rows
    with any missing value are dropped.  With `standardize`, covariate and
    response columns are centered and scaled by their population standard
    deviation; covariate columns with (near-)zero variance are dropped
    with a warning.  `noise_variance` seeds the returned Dataset's sigma^2
    assumption (override or re-estimate downstream as needed).
    """
    # Sniff the delimiter over a fixed candidate set; the stdlib sniffer
    # without candidates can pick an arbitrary frequent character (e.g. a
    # letter) on single-column files.
    with open(path, "r", encoding="utf-8", newline="") as handle:
        sample = handle.read(65536)
    try:
        sep = csv.Sniffer().sniff(sample, delimiters=",\t;| ").delimiter
    except csv.Error:
        sep = ","
    frame = pd.read_csv(path, sep=sep)
    if target_column not in frame.columns:
        raise ValueError(f"target column {target_column!r} not found; file has "
                         f"columns {list(frame.columns)}.")
    if frame.shape[1] < 2:
        raise ValueError("the file must contain at least one covariate column "
                         "besides the target.")
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    rows_read = int(numeric.shape[0])
    kept = numeric.dropna()
    rows_dropped = rows_read - int(kept.shape[0])
    if kept.shape[0] < 1:
        raise ValueError("no complete rows remain after dropping missing values.")

    y = kept[target_column].to_numpy(dtype=float)
    features = kept.drop(columns=[target_column])
    names = list(features.columns)
    X = features.to_numpy(dtype=float)
    dropped_cols: list[str] = []
    if standardize:
        mean, std = X.mean(axis=0), X.std(axis=0)
        degenerate = std <= 1e-12 * (1.0 + np.abs(mean))
        if np.any(degenerate):
            dropped_cols = [names[i] for i in np.flatnonzero(degenerate)]
            warnings.warn("dropping zero-variance column(s) under "
                          f"standardization: {dropped_cols}", UserWarning,
                          stacklevel=2)
            X = X[:, ~degenerate]
            mean, std = mean[~degenerate], std[~degenerate]
            names = [nm for nm, bad in zip(names, degenerate) if not bad]
        if X.shape[1] == 0:
            raise ValueError("all covariate columns were dropped as "
                             "zero-variance under standardization.")
        X = (X - mean) / std
        y_mean, y_std = y.mean(), y.std()
        if y_std <= 1e-12 * (1.0 + abs(y_mean)):
            raise ValueError("the target column has zero variance; cannot "
                             "standardize the response.")
        y = (y - y_mean) / y_std

    dataset = Dataset(X, y, noise_variance)
    if not with_report:
        return dataset
    report = IngestReport(target=target_column, feature_names=tuple(names),
                          rows_read=rows_read, rows_dropped=rows_dropped,
                          columns_dropped=tuple(dropped_cols),
                          standardized=standardize)
    return dataset, report


# ---------------------------------------------------------------------------
# Table and config serialization
# ---------------------------------------------------------------------------

CURVE_COLUMNS = ("experiment", "d", "n", "estimator",
                 "test_mse", "test_mse_stderr", "bias", "variance",
                 "mdl_comp", "mdl_comp_stderr", "ropt", "ropt_stderr",
                 "approx_ropt", "approx_ropt_stderr",
                 "selected_lambda", "selected_lambda_stderr")


def points_to_frame(points: Sequence[CurvePoint], experiment: str) -> pd.DataFrame:
    """Flatten curve points into the fixed-schema result table."""
    rows = []
    for p in points:
        row = {"experiment": experiment}
        row.update(dataclasses.asdict(p))
        rows.append(row)
    frame = pd.DataFrame(rows, columns=list(CURVE_COLUMNS))
    return frame


def config_to_dict(config: ExperimentConfig) -> dict:
    """JSON-ready echo of a config, with the penalty grid resolved."""
    out = dataclasses.asdict(config)
    grid = config.grid
    out["grid"] = grid if isinstance(grid, str) else [float(g) for g in np.asarray(grid).ravel()]
    out["grid_values"] = [float(g) for g in resolve_grid(grid)]
    out["d_grid"] = [int(d) for d in config.d_grid]
    out["estimators"] = list(config.estimators)
    return out
