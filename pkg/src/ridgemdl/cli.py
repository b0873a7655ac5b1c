"""Command-line front end.

Subcommands bind the library operations to files: inputs are headerless
comma-separated matrices/vectors (or headered CSV datasets for the ingest
paths), outputs are CSV tables (12 significant digits), JSON result
files, and matplotlib figures rendered next to the delimited output
(disable with --no-plot).  Every run writes a resolved-config JSON next
to its outputs.  Exit status: 0 on success, 1 on input error, 2 on
numeric failure.  Diagnostics go to stderr; the result summary is printed
to stdout as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np
import pandas as pd

from . import __version__
from .complexity import (RmtSpec, insample_mse_analytic, kl_ridge_code,
                         lnml_normalizer, minimax_worstcase_codelength,
                         mp_density, mp_point_mass, oracle_complexity_report,
                         rmt_redundancy_bound)
from .estimators import PenaltySpec, fit_ridge, kfold_select, loocv_select
from .experiments import (COMPARISON_SCHEMES, ESTIMATORS, ExperimentConfig,
                          config_to_dict, ingest_dataset, points_to_frame,
                          run_bias_variance, run_mdl_scaling,
                          run_selector_comparison)
from .kernels import (DecayRegime, KernelComplexityInput, decay_regime_bound,
                      kernel_bound_objective, kernel_mdl_bound)
from .linalg import Dataset, DesignSpec, TruthSpec, spectral_decompose
from .optimize import log_grid
from .practical import (GRID_PRESETS, estimate_noise_variance, resolve_grid,
                        select_lambda_prac_kernel, select_lambda_prac_linear)

_CSV_FLOAT_FORMAT = "%.12g"
_DESIGN_KINDS = ("gaussian_iid", "decaying", "spike", "cosine")
_ROW_SCALES = ("unit_variance", "inv_n_variance")


# ---------------------------------------------------------------------------
# Small I/O helpers
# ---------------------------------------------------------------------------

def _np_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def _ensure_out(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _write_json(obj, path: str) -> str:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(obj, handle, indent=2, default=_np_default, sort_keys=True)
        handle.write("\n")
    return path


def _write_frame(frame: pd.DataFrame, path: str) -> str:
    frame.to_csv(path, index=False, float_format=_CSV_FLOAT_FORMAT,
                 lineterminator="\n")
    return path


def _echo_config(args: argparse.Namespace, out_dir: str, stem: str,
                 extra: dict | None = None) -> str:
    arguments = {k: v for k, v in vars(args).items() if k != "command"}
    payload = {"subcommand": args.command, "package_version": __version__,
               "arguments": arguments}
    if extra:
        payload.update(extra)
    return _write_json(payload, os.path.join(out_dir, f"{stem}_config.json"))


def _load_matrix(path: str) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def _load_vector(path: str) -> np.ndarray:
    return np.atleast_1d(np.loadtxt(path, delimiter=",")).ravel()


def _parse_log_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("--grid expects lo:hi:count (log-spaced), e.g. 1e-3:1e6:20.")
    return log_grid(float(parts[0]), float(parts[1]), int(parts[2]))


def _grid_from_args(args: argparse.Namespace, fallback: str) -> np.ndarray:
    if getattr(args, "grid", None):
        return _parse_log_grid(args.grid)
    return resolve_grid(getattr(args, "preset", None) or fallback)


def _parse_int_list(text: str) -> list[int]:
    values = [int(t) for t in text.split(",") if t.strip()]
    if not values:
        raise ValueError("expected a comma-separated list of integers.")
    return values


def _parse_float_list(text: str) -> list[float]:
    values = [float(t) for t in text.split(",") if t.strip()]
    if not values:
        raise ValueError("expected a comma-separated list of reals.")
    return values


def _parse_labels(text: str) -> list[str]:
    labels = [t.strip() for t in text.split(",") if t.strip()]
    if not labels:
        raise ValueError("expected a comma-separated list of labels.")
    return labels


def _check_threads(args: argparse.Namespace) -> None:
    if getattr(args, "threads", 1) < 1:
        raise ValueError("--threads must be a positive integer.")


def _resolve_sigma2(args: argparse.Namespace, dataset: Dataset,
                    decomposition=None) -> tuple[float, str]:
    """Noise variance from --sigma2, the LOOCV plug-in, or the default 1."""
    if getattr(args, "sigma2_plugin", False):
        value = estimate_noise_variance(dataset, decomposition=decomposition)
        return value, "loocv_plugin"
    if getattr(args, "sigma2", None) is not None:
        return float(args.sigma2), "flag"
    return 1.0, "default"


def _design_spec_from_args(args: argparse.Namespace, n: int, d: int) -> DesignSpec:
    return DesignSpec(kind=args.design_kind, n=n, d=d, alpha=args.alpha,
                      s=args.spike_s, row_scale=args.row_scale, seed=args.seed)


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def _cmd_oracle(args) -> dict:
    out = _ensure_out(args.out)
    X = _load_matrix(args.design)
    theta = _load_vector(args.truth)
    decomp = spectral_decompose(X, truth=theta)
    report = oracle_complexity_report(decomp, args.sigma2)
    result = {
        "n": decomp.n, "d": decomp.d, "sigma2": args.sigma2,
        "mdl_comp": report.mdl_comp, "ropt": report.ropt,
        "lambda_opt": report.lambda_opt.tolist(),
        "codelength_hyper": report.codelength_hyper,
        "retained": report.retained, "excluded": report.excluded,
        "degenerate": report.degenerate,
    }
    _write_json(result, os.path.join(out, "oracle_result.json"))
    _echo_config(args, out, "oracle")
    return result


def _cmd_kl(args) -> dict:
    out = _ensure_out(args.out)
    X = _load_matrix(args.design)
    theta = _load_vector(args.truth)
    decomp = spectral_decompose(X, truth=theta)
    if args.lam is not None:
        penalty = float(args.lam)
        penalty_echo: float | list = penalty
    else:
        vec = _load_vector(args.penalty)
        penalty = vec
        penalty_echo = vec.tolist()
    result = {
        "n": decomp.n, "d": decomp.d, "sigma2": args.sigma2,
        "penalty": penalty_echo,
        "kl": kl_ridge_code(decomp, args.sigma2, penalty),
        "insample_mse": insample_mse_analytic(decomp, args.sigma2, penalty),
        "minimax_codelength": minimax_worstcase_codelength(decomp, args.sigma2, penalty),
        "lnml_normalizer": lnml_normalizer(decomp, penalty),
    }
    _write_json(result, os.path.join(out, "kl_result.json"))
    _echo_config(args, out, "kl")
    return result


def _selection_outputs(out: str, stem: str, selection, sigma2: float,
                       sigma2_source: str, n: int, d: int,
                       no_plot: bool) -> dict:
    trace = selection.grid_trace
    _write_frame(pd.DataFrame({"lambda": trace[:, 0], "objective": trace[:, 1]}),
                 os.path.join(out, f"{stem}_trace.csv"))
    _write_frame(pd.DataFrame({"coefficient": selection.fit.coefficients}),
                 os.path.join(out, f"{stem}_coefficients.csv"))
    figure = None
    if not no_plot:
        from . import plots
        figure = plots.plot_objective_trace(
            trace, selection.selected_lambda, selection.objective_value,
            os.path.join(out, f"{stem}.png"),
            title="codelength objective")
    result = {
        "n": n, "d": d,
        "selected_lambda": selection.selected_lambda,
        "objective_value": selection.objective_value,
        "approx_ropt": selection.approx_ropt,
        "at_grid_edge": selection.at_grid_edge,
        "sigma2": sigma2, "sigma2_source": sigma2_source,
        "figure": figure,
    }
    _write_json(result, os.path.join(out, f"{stem}_result.json"))
    return result


def _cmd_prac(args) -> dict:
    out = _ensure_out(args.out)
    X = _load_matrix(args.design)
    y = _load_vector(args.response)
    grid = _grid_from_args(args, "sim20")
    decomp = spectral_decompose(X)
    sigma2, source = _resolve_sigma2(args, Dataset(X, y), decomposition=decomp)
    dataset = Dataset(X, y, sigma2)
    selection = select_lambda_prac_linear(dataset, grid, refine=not args.no_refine,
                                          decomposition=decomp)
    result = _selection_outputs(out, "prac", selection, sigma2, source,
                                dataset.n, dataset.d, args.no_plot)
    _echo_config(args, out, "prac")
    return result


def _cmd_kernel_prac(args) -> dict:
    out = _ensure_out(args.out)
    K = _load_matrix(args.kernel)
    y = _load_vector(args.response)
    grid = _grid_from_args(args, "sim20")
    sigma2 = args.sigma2 if args.sigma2 is not None else 1.0
    selection = select_lambda_prac_kernel(K, y, grid, sigma2=sigma2,
                                          refine=not args.no_refine)
    result = _selection_outputs(out, "kernel_prac", selection, sigma2,
                                "flag" if args.sigma2 is not None else "default",
                                K.shape[0], K.shape[0], args.no_plot)
    _echo_config(args, out, "kernel_prac")
    return result


def _cmd_cv(args) -> dict:
    out = _ensure_out(args.out)
    X = _load_matrix(args.design)
    y = _load_vector(args.response)
    grid = _grid_from_args(args, "sim20")
    dataset = Dataset(X, y)
    decomp = spectral_decompose(X)
    if args.scheme == "loocv":
        cv = loocv_select(dataset, grid, decomposition=decomp)
    else:
        cv = kfold_select(dataset, grid, k=args.k, seed=args.seed)
    fit = fit_ridge(dataset, PenaltySpec(scalar=cv.selected_lambda),
                    decomposition=decomp)
    _write_frame(pd.DataFrame({"lambda": cv.grid, "cv_error": cv.cv_errors}),
                 os.path.join(out, "cv_trace.csv"))
    _write_frame(pd.DataFrame({"coefficient": fit.coefficients}),
                 os.path.join(out, "cv_coefficients.csv"))
    figure = None
    if not args.no_plot:
        from . import plots
        finite = np.isfinite(cv.cv_errors)
        selected_error = float(np.interp(cv.selected_lambda, cv.grid, cv.cv_errors))
        figure = plots.plot_objective_trace(
            np.column_stack([cv.grid[finite], cv.cv_errors[finite]]),
            cv.selected_lambda, selected_error,
            os.path.join(out, "cv.png"),
            ylabel="cross-validation MSE", title=f"scheme: {cv.scheme}")
    result = {"n": dataset.n, "d": dataset.d, "scheme": cv.scheme,
              "selected_lambda": cv.selected_lambda, "figure": figure}
    _write_json(result, os.path.join(out, "cv_result.json"))
    _echo_config(args, out, "cv")
    return result


def _cmd_rmt(args) -> dict:
    out = _ensure_out(args.out)
    spec = RmtSpec(gamma=args.gamma, snr=args.snr)
    bound = rmt_redundancy_bound(spec)
    mass = mp_point_mass(args.gamma)
    lo = (1.0 - np.sqrt(args.gamma)) ** 2
    hi = (1.0 + np.sqrt(args.gamma)) ** 2
    a_grid = np.linspace(lo, hi, args.density_points)
    density = mp_density(a_grid, args.gamma)
    _write_frame(pd.DataFrame({"eigenvalue": a_grid, "density": density}),
                 os.path.join(out, "rmt_density.csv"))
    figure = None
    if not args.no_plot:
        from . import plots
        figure = plots.plot_mp_density(a_grid, density, mass, args.gamma,
                                       os.path.join(out, "rmt.png"))
    result = {"gamma": args.gamma, "snr": args.snr, "redundancy_bound": bound,
              "point_mass_at_zero": mass, "support": [float(lo), float(hi)],
              "figure": figure}
    _write_json(result, os.path.join(out, "rmt_result.json"))
    _echo_config(args, out, "rmt")
    return result


def _cmd_kernel_bound(args) -> dict:
    out = _ensure_out(args.out)
    if args.kernel is not None:
        K = _load_matrix(args.kernel)
        inp = KernelComplexityInput.from_kernel(K, snr_sq=args.snr_sq)
    else:
        rho = np.sort(_load_vector(args.eigenvalues))[::-1]
        inp = KernelComplexityInput(eigenvalues=rho,
                                    hilbert_norm_sq_over_sigma_sq=args.snr_sq)
    res = kernel_mdl_bound(inp, include_lambda_codelength=args.include_lambda_codelength)
    figure = None
    rho_max = float(inp.eigenvalues.max(initial=0.0))
    if rho_max > 0:
        grid = log_grid(1e-8 * rho_max, 1e4 * rho_max, 60)
        values = np.array([kernel_bound_objective(inp, lam) for lam in grid])
        _write_frame(pd.DataFrame({"lambda": grid, "objective": values}),
                     os.path.join(out, "kernel_bound_trace.csv"))
        if not args.no_plot:
            from . import plots
            figure = plots.plot_objective_trace(
                np.column_stack([grid, values]), res.lambda_opt, res.value,
                os.path.join(out, "kernel_bound.png"),
                ylabel="bound objective (nats per sample)",
                title="kernel complexity bound")
    result = {"n": inp.n, "snr_sq": args.snr_sq, "value": res.value,
              "lambda_opt": res.lambda_opt, "at_grid_edge": res.at_grid_edge,
              "adjusted_value": res.adjusted_value, "figure": figure}
    _write_json(result, os.path.join(out, "kernel_bound_result.json"))
    _echo_config(args, out, "kernel_bound")
    return result


def _cmd_decay_bound(args) -> dict:
    out = _ensure_out(args.out)

    def bound_at(n: int) -> float:
        regime = DecayRegime(kind=args.kind, n=n, snr=args.snr, d=args.d,
                             omega=args.omega, a=args.a)
        return decay_regime_bound(regime)

    result: dict = {"kind": args.kind, "snr": args.snr, "d": args.d,
                    "omega": args.omega, "a": args.a}
    figure = None
    if args.n_sweep is not None:
        parts = args.n_sweep.split(":")
        if len(parts) != 3:
            raise ValueError("--n-sweep expects lo:hi:count (log-spaced integers).")
        lo, hi, count = int(parts[0]), int(parts[1]), int(parts[2])
        if not (1 <= lo < hi and count >= 2):
            raise ValueError("--n-sweep needs 1 <= lo < hi and count >= 2.")
        ns = np.unique(np.round(np.geomspace(lo, hi, count)).astype(int))
        bounds = np.array([bound_at(int(n)) for n in ns])
        _write_frame(pd.DataFrame({"n": ns, "bound": bounds}),
                     os.path.join(out, "decay_bound.csv"))
        slope = float(np.polyfit(np.log(ns), np.log(bounds), 1)[0])
        result.update({"n_values": ns.tolist(), "bounds": bounds.tolist(),
                       "loglog_slope": slope})
        if not args.no_plot:
            from . import plots
            figure = plots.plot_decay_sweep(ns, bounds, args.kind,
                                            os.path.join(out, "decay_bound.png"))
    else:
        result.update({"n": args.n, "bound": bound_at(args.n)})
    result["figure"] = figure
    _write_json(result, os.path.join(out, "decay_bound_result.json"))
    _echo_config(args, out, "decay_bound")
    return result


def _cmd_simulate_scaling(args) -> dict:
    out = _ensure_out(args.out)
    d_grid = _parse_int_list(args.d_grid)
    design = _design_spec_from_args(args, n=args.n, d=max(d_grid))
    truth = TruthSpec(true_dim=args.true_dim, norm=args.norm, seed=args.seed)
    config = ExperimentConfig(design=design, truth=truth,
                              noise_variance=args.sigma2, d_grid=tuple(d_grid),
                              n_replicates=args.replicates,
                              base_seed=args.seed)
    points = run_mdl_scaling(config)
    frame = points_to_frame(points, "simulate-scaling")
    csv_path = _write_frame(frame, os.path.join(out, "simulate_scaling.csv"))
    figure = None
    if not args.no_plot:
        from . import plots
        figure = plots.plot_scaling(frame, os.path.join(out, "simulate_scaling.png"))
    result = {"rows": len(points), "csv": csv_path, "figure": figure}
    _write_json(result, os.path.join(out, "simulate_scaling_result.json"))
    _echo_config(args, out, "simulate_scaling",
                 extra={"experiment_config": config_to_dict(config)})
    return result


def _cmd_bias_variance(args) -> dict:
    out = _ensure_out(args.out)
    d_grid = _parse_int_list(args.d_grid)
    estimators = tuple(_parse_labels(args.estimators))
    design = _design_spec_from_args(args, n=args.n, d=max(d_grid))
    truth = TruthSpec(true_dim=args.true_dim, norm=args.norm, seed=args.seed)
    grid = (_parse_log_grid(args.grid) if args.grid
            else (args.preset or "sim20"))
    config = ExperimentConfig(design=design, truth=truth,
                              noise_variance=args.sigma2, d_grid=tuple(d_grid),
                              n_replicates=args.replicates,
                              base_seed=args.seed, estimators=estimators,
                              grid=grid)
    points = run_bias_variance(config, test_size=args.test_size)
    frame = points_to_frame(points, "bias-variance")
    csv_path = _write_frame(frame, os.path.join(out, "bias_variance.csv"))
    figure = None
    if not args.no_plot:
        from . import plots
        figure = plots.plot_bias_variance(frame, os.path.join(out, "bias_variance.png"))
    result = {"rows": len(points), "csv": csv_path, "figure": figure}
    _write_json(result, os.path.join(out, "bias_variance_result.json"))
    _echo_config(args, out, "bias_variance",
                 extra={"experiment_config": config_to_dict(config)})
    return result


def _cmd_compare(args) -> dict:
    out = _ensure_out(args.out)
    schemes = tuple(_parse_labels(args.schemes))
    ratios = _parse_float_list(args.ratios) if args.ratios else None
    extra: dict = {}
    if args.data is not None:
        if args.target is None:
            raise ValueError("--target is required with --data.")
        dataset = ingest_dataset(args.data, args.target,
                                 standardize=not args.no_standardize)
        sigma2, source = _resolve_sigma2(args, dataset)
        dataset = Dataset(dataset.covariates, dataset.response, sigma2)
        grid = _grid_from_args(args, "pmlb10")
        points = run_selector_comparison(
            dataset, grid=grid, schemes=schemes, ratios=ratios,
            n_replicates=args.replicates, base_seed=args.seed,
            test_fraction=args.test_fraction)
        extra = {"mode": "dataset", "sigma2": sigma2, "sigma2_source": source}
    else:
        for flag, value in (("--d", args.d), ("--true-dim", args.true_dim)):
            if value is None:
                raise ValueError(f"{flag} is required in simulated mode "
                                 "(or pass --data for a dataset).")
        if args.n is None and ratios is None:
            raise ValueError("--n is required when --ratios is omitted "
                             "(simulated mode).")
        n_design = (args.n if args.n is not None
                    else max(2, round(args.d / max(ratios))))
        design = _design_spec_from_args(args, n=n_design, d=args.d)
        truth = TruthSpec(true_dim=args.true_dim, norm=args.norm, seed=args.seed)
        grid = (_parse_log_grid(args.grid) if args.grid
                else (args.preset or "sim20"))
        sigma2 = args.sigma2 if args.sigma2 is not None else 1.0
        config = ExperimentConfig(design=design, truth=truth,
                                  noise_variance=sigma2, d_grid=(args.d,),
                                  n_replicates=args.replicates,
                                  base_seed=args.seed, grid=grid)
        points = run_selector_comparison(
            config, schemes=schemes, ratios=ratios,
            test_size=args.test_size)
        extra = {"mode": "simulated", "sigma2": sigma2,
                 "experiment_config": config_to_dict(config)}
    frame = points_to_frame(points, "compare")
    csv_path = _write_frame(frame, os.path.join(out, "compare.csv"))
    figure = None
    if not args.no_plot:
        from . import plots
        figure = plots.plot_comparison(frame, os.path.join(out, "compare.png"))
    result = {"rows": len(points), "csv": csv_path, "figure": figure}
    result.update({k: v for k, v in extra.items() if k != "experiment_config"})
    _write_json(result, os.path.join(out, "compare_result.json"))
    _echo_config(args, out, "compare", extra=extra)
    return result


def _cmd_ingest_check(args) -> dict:
    out = _ensure_out(args.out)
    dataset, report = ingest_dataset(args.data, args.target,
                                     standardize=not args.no_standardize,
                                     with_report=True)
    X = dataset.covariates
    result = {
        "n": dataset.n, "d": dataset.d, "target": report.target,
        "feature_names": list(report.feature_names),
        "rows_read": report.rows_read, "rows_dropped": report.rows_dropped,
        "columns_dropped": list(report.columns_dropped),
        "standardized": report.standardized,
        "column_means": X.mean(axis=0).tolist(),
        "column_variances": X.var(axis=0).tolist(),
        "response_mean": float(dataset.response.mean()),
        "response_variance": float(dataset.response.var()),
    }
    _write_json(result, os.path.join(out, "ingest_check_result.json"))
    _echo_config(args, out, "ingest_check")
    return result


_HANDLERS = {
    "oracle": _cmd_oracle,
    "kl": _cmd_kl,
    "prac": _cmd_prac,
    "kernel-prac": _cmd_kernel_prac,
    "cv": _cmd_cv,
    "rmt": _cmd_rmt,
    "kernel-bound": _cmd_kernel_bound,
    "decay-bound": _cmd_decay_bound,
    "simulate-scaling": _cmd_simulate_scaling,
    "bias-variance": _cmd_bias_variance,
    "compare": _cmd_compare,
    "ingest-check": _cmd_ingest_check,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, plot: bool = False) -> None:
    p.add_argument("--out", default=".", help="output directory (created if missing)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap (current operations are single-threaded)")
    if plot:
        p.add_argument("--no-plot", action="store_true",
                       help="skip figure rendering")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--grid", help="explicit log-spaced penalty grid lo:hi:count")
    group.add_argument("--preset", choices=sorted(GRID_PRESETS),
                       help="named penalty grid preset")


def _add_sigma2_flags(p: argparse.ArgumentParser, plugin: bool) -> None:
    if plugin:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--sigma2", type=float, default=None,
                           help="noise variance (default 1)")
        group.add_argument("--sigma2-plugin", action="store_true",
                           help="estimate the noise variance from a "
                                "cross-validated ridge fit")
    else:
        p.add_argument("--sigma2", type=float, default=None,
                       help="noise variance (default 1)")


def _add_design_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--design-kind", choices=_DESIGN_KINDS, default="gaussian_iid",
                   help="synthetic design family")
    p.add_argument("--alpha", type=float, default=None,
                   help="decay exponent (decaying design)")
    p.add_argument("--spike-s", type=int, default=None,
                   help="spike count (spike design)")
    p.add_argument("--row-scale", choices=_ROW_SCALES, default="unit_variance",
                   help="entry scale of the design")
    p.add_argument("--seed", type=int, default=0, help="base seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ridgemdl",
        description="Codelength-based complexity measures and penalty "
                    "selection for linear and kernel ridge regression.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    p = sub.add_parser("oracle", help="spectrum-based complexity report for a "
                                      "design and truth")
    p.add_argument("--design", required=True, help="headerless CSV design matrix")
    p.add_argument("--truth", required=True, help="headerless CSV truth vector")
    p.add_argument("--sigma2", type=float, default=1.0, help="noise variance")
    _add_common(p)

    p = sub.add_parser("kl", help="per-sample KL, in-sample MSE, and worst-case "
                                  "codelength at a given penalty")
    p.add_argument("--design", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--sigma2", type=float, default=1.0)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lam", type=float, help="scalar penalty")
    group.add_argument("--penalty", help="headerless CSV per-coordinate penalties")
    _add_common(p)

    p = sub.add_parser("prac", help="data-driven penalty selection for linear ridge")
    p.add_argument("--design", required=True)
    p.add_argument("--response", required=True)
    p.add_argument("--no-refine", action="store_true",
                   help="grid-only selection (skip golden-section refinement)")
    _add_sigma2_flags(p, plugin=True)
    _add_grid_flags(p)
    _add_common(p, plot=True)

    p = sub.add_parser("kernel-prac", help="data-driven penalty selection for "
                                           "kernel ridge")
    p.add_argument("--kernel", required=True, help="headerless CSV kernel matrix")
    p.add_argument("--response", required=True)
    p.add_argument("--no-refine", action="store_true")
    _add_sigma2_flags(p, plugin=False)
    _add_grid_flags(p)
    _add_common(p, plot=True)

    p = sub.add_parser("cv", help="cross-validated penalty selection")
    p.add_argument("--design", required=True)
    p.add_argument("--response", required=True)
    p.add_argument("--scheme", choices=("loocv", "kfold"), default="loocv")
    p.add_argument("--k", type=int, default=5, help="folds for --scheme kfold")
    p.add_argument("--seed", type=int, default=0, help="fold-assignment seed")
    _add_grid_flags(p)
    _add_common(p, plot=True)

    p = sub.add_parser("rmt", help="high-dimensional redundancy bound and "
                                   "limiting spectral density")
    p.add_argument("--gamma", type=float, required=True, help="aspect ratio d/n")
    p.add_argument("--snr", type=float, required=True,
                   help="per-coordinate signal-to-noise ratio")
    p.add_argument("--density-points", type=int, default=400)
    _add_common(p, plot=True)

    p = sub.add_parser("kernel-bound", help="kernel complexity bound from a "
                                            "kernel matrix or its spectrum")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kernel", help="headerless CSV kernel matrix")
    group.add_argument("--eigenvalues", help="headerless CSV eigenvalue vector")
    p.add_argument("--snr-sq", type=float, required=True,
                   help="squared Hilbert-norm SNR")
    p.add_argument("--include-lambda-codelength", action="store_true",
                   help="also report the bound adjusted by log(lambda)/n")
    _add_common(p, plot=True)

    p = sub.add_parser("decay-bound", help="closed-form complexity rate for an "
                                           "eigenvalue-decay regime")
    p.add_argument("--kind", choices=("gaussian_like", "sobolev", "ntk_like"),
                   required=True)
    p.add_argument("--snr", type=float, required=True)
    p.add_argument("--d", type=int, default=1, help="input dimension")
    p.add_argument("--omega", type=float, default=None, help="smoothness (sobolev)")
    p.add_argument("--a", type=float, default=None, help="decay offset (ntk_like)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="single sample size")
    group.add_argument("--n-sweep", help="sample-size sweep lo:hi:count")
    _add_common(p, plot=True)

    p = sub.add_parser("simulate-scaling", help="complexity scaling curves vs "
                                                "fit dimension")
    p.add_argument("--n", type=int, default=200, help="sample size")
    p.add_argument("--d-grid", required=True, help="comma-separated fit dimensions")
    p.add_argument("--true-dim", type=int, required=True)
    p.add_argument("--norm", type=float, default=1.0, help="truth norm")
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--replicates", type=int, default=20)
    _add_design_flags(p)
    _add_common(p, plot=True)

    p = sub.add_parser("bias-variance", help="bias/variance decomposition vs "
                                             "fit dimension")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--d-grid", required=True)
    p.add_argument("--true-dim", type=int, required=True)
    p.add_argument("--norm", type=float, default=1.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--replicates", type=int, default=50)
    p.add_argument("--estimators", default=",".join(ESTIMATORS),
                   help=f"comma-separated subset of {ESTIMATORS}")
    p.add_argument("--test-size", type=int, default=1000)
    _add_design_flags(p)
    _add_grid_flags(p)
    _add_common(p, plot=True)

    p = sub.add_parser("compare", help="penalty-selection schemes vs held-out "
                                       "test error")
    p.add_argument("--data", default=None, help="headered CSV dataset "
                                                "(dataset mode)")
    p.add_argument("--target", default=None, help="target column (dataset mode)")
    p.add_argument("--no-standardize", action="store_true")
    p.add_argument("--n", type=int, default=None,
                   help="training size when --ratios is omitted (simulated mode)")
    p.add_argument("--d", type=int, default=None, help="dimension (simulated mode)")
    p.add_argument("--true-dim", type=int, default=None)
    p.add_argument("--norm", type=float, default=1.0)
    p.add_argument("--ratios", default=None,
                   help="comma-separated target d/n ratios")
    p.add_argument("--schemes", default=",".join(COMPARISON_SCHEMES),
                   help=f"comma-separated subset of {COMPARISON_SCHEMES}")
    p.add_argument("--replicates", type=int, default=3)
    p.add_argument("--test-fraction", type=float, default=0.25,
                   help="held-out fraction (dataset mode)")
    p.add_argument("--test-size", type=int, default=1000,
                   help="fresh test samples (simulated mode)")
    p.add_argument("--design-kind", choices=_DESIGN_KINDS, default="gaussian_iid")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--spike-s", type=int, default=None)
    p.add_argument("--row-scale", choices=_ROW_SCALES, default="unit_variance")
    p.add_argument("--seed", type=int, default=0)
    _add_sigma2_flags(p, plugin=True)
    _add_grid_flags(p)
    _add_common(p, plot=True)

    p = sub.add_parser("ingest-check", help="load, standardize, and summarize a "
                                            "headered CSV dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--no-standardize", action="store_true")
    _add_common(p)

    return parser


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def run_command(argv=None) -> int:
    """Parse argv, dispatch, and return the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("error: a subcommand is required.", file=sys.stderr)
        return 1
    try:
        _check_threads(args)
        result = _HANDLERS[args.command](args)
    except (np.linalg.LinAlgError, FloatingPointError, ZeroDivisionError,
            OverflowError) as exc:
        # Checked before the input errors: LinAlgError subclasses ValueError.
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(result, indent=2, default=_np_default))
    return 0


def entrypoint() -> None:
    sys.exit(run_command(sys.argv[1:]))
