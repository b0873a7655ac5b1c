"""Figure rendering for the command-line report paths.

Each function draws one figure from an experiment table (or trace array)
and writes it to a file next to the delimited output, returning the path.
The Agg backend is forced so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

_DPI = 150


def _save(fig, path: str) -> str:
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_objective_trace(trace: np.ndarray, selected_lambda: float,
                         objective_value: float, path: str,
                         ylabel: str = "objective (nats per sample)",
                         title: str | None = None) -> str:
    """Objective-vs-penalty curve with the selected penalty marked."""
    trace = np.asarray(trace, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(trace[:, 0], trace[:, 1], marker=".", color="tab:blue",
                label="grid objective")
    ax.plot([selected_lambda], [objective_value], marker="o",
            color="tab:red", linestyle="none",
            label=f"selected $\\lambda$ = {selected_lambda:.6g}")
    ax.set_xlabel("penalty $\\lambda$")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def plot_bias_variance(frame: pd.DataFrame, path: str) -> str:
    """Test error (left) and bias/variance components (right) vs dimension."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    for label, sub in frame.groupby("estimator", sort=False):
        ax1.errorbar(sub["d"], sub["test_mse"], yerr=sub["test_mse_stderr"],
                     marker="o", capsize=2, label=label)
        ax2.plot(sub["d"], sub["bias"], marker="o", linestyle="--",
                 label=f"{label} bias")
        ax2.plot(sub["d"], sub["variance"], marker="s", linestyle=":",
                 label=f"{label} variance")
    for ax, ylab in ((ax1, "test MSE"), (ax2, "bias / variance")):
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("fit dimension $d$")
        ax.set_ylabel(ylab)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def plot_scaling(frame: pd.DataFrame, path: str) -> str:
    """Exact complexity curves and their closed-form approximations vs d."""
    oracle = frame[frame["estimator"] == "oracle"]
    approx = frame[frame["estimator"] == "scaling_approx"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    for ax, column, ylab in ((ax1, "mdl_comp", "complexity (nats per sample)"),
                             (ax2, "ropt", "optimal redundancy (nats per sample)")):
        ax.errorbar(oracle["d"], oracle[column], yerr=oracle[f"{column}_stderr"],
                    marker="o", capsize=2, color="tab:blue", label="exact (mean)")
        ax.plot(approx["d"], approx[column], marker="x", linestyle="--",
                color="tab:orange", label="closed-form approximation")
        ax.set_xscale("log")
        ax.set_xlabel("fit dimension $d$")
        ax.set_ylabel(ylab)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def plot_comparison(frame: pd.DataFrame, path: str) -> str:
    """Held-out test MSE vs d/n ratio per penalty-selection scheme."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for label, sub in frame.groupby("estimator", sort=False):
        ratio = sub["d"] / sub["n"]
        ax.errorbar(ratio, sub["test_mse"], yerr=sub["test_mse_stderr"],
                    marker="o", capsize=2, label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("$d/n$")
    ax.set_ylabel("test MSE")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_mp_density(a_grid: np.ndarray, density: np.ndarray, point_mass: float,
                    gamma: float, path: str) -> str:
    """Limiting spectral density, annotated with the mass at zero."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(a_grid, density, color="tab:blue")
    ax.fill_between(a_grid, density, alpha=0.2, color="tab:blue")
    if point_mass > 0:
        ax.axvline(0.0, color="tab:red", linestyle="--",
                   label=f"point mass at 0: {point_mass:.4g}")
        ax.legend()
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("density")
    ax.set_title(f"limiting spectral density ($\\gamma$ = {gamma:g})")
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def plot_decay_sweep(ns: np.ndarray, bounds: np.ndarray, kind: str,
                     path: str) -> str:
    """Rate-bound decay vs sample size on log-log axes."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ns, bounds, marker="o", color="tab:blue")
    ax.set_xlabel("sample size $n$")
    ax.set_ylabel("complexity bound (nats per sample)")
    ax.set_title(f"decay regime: {kind}")
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)
