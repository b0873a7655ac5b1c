"""Codelength-based complexity measures and hyperparameter selection for
linear and kernel ridge regression.

The package computes, from the spectrum of the Gram matrix:

- exact per-sample complexity (optimal redundancy plus hyperparameter
  codelength) and its closed-form optimizers for linear ridge;
- the kernel analogue, a penalty-optimized complexity bound, and
  closed-form rates for standard eigenvalue-decay regimes;
- the high-dimensional (aspect-ratio) limit of the redundancy;
- a data-driven codelength objective whose minimizer selects the ridge
  penalty without cross-validation;
- seeded experiment harnesses (bias/variance curves, complexity scaling
  curves, selector comparisons) and dataset ingestion.

The :mod:`ridgemdl.cli` module exposes the same operations as a command
line with CSV/JSON/figure outputs.
"""

__version__ = "0.1.0"

from .linalg import (Dataset, DesignSpec, SpectralDecomposition, TruthSpec,
                     generate_design, generate_truth, project_truth,
                     sample_linear_model, spectral_decompose)
from .optimize import GridMinimum, golden_section_min, log_grid, minimize_on_log_grid
from .estimators import (CvResult, FitResult, PenaltySpec, fit_kernel_ridge,
                         fit_ridge, kfold_select, loocv_errors, loocv_select,
                         predict_linear, validate_kernel)
from .complexity import (ComplexityReport, RmtSpec, ScalingRegimeInput,
                         insample_bound, insample_mse_analytic, kl_ridge_code,
                         lnml_normalizer, minimax_worstcase_codelength,
                         mp_density, mp_point_mass, oracle_complexity_report,
                         rmt_redundancy_bound, scaling_approximation)
from .kernels import (DecayRegime, KernelBoundResult, KernelComplexityInput,
                      KernelSpec, build_kernel, c_alpha, decay_regime_bound,
                      kernel_bound_objective, kernel_mdl_bound, kl_kernel_code,
                      power_law_eigenvalues)
from .practical import (GRID_PRESETS, PracSelection, approx_redundancy,
                        estimate_noise_variance, prac_objective_kernel,
                        prac_objective_linear, resolve_grid,
                        select_lambda_prac_kernel, select_lambda_prac_linear)
from .experiments import (COMPARISON_SCHEMES, ESTIMATORS, CurvePoint,
                          ExperimentConfig, IngestReport, config_to_dict,
                          ingest_dataset, points_to_frame, run_bias_variance,
                          run_mdl_scaling, run_selector_comparison)

__all__ = [
    "__version__",
    # linalg
    "Dataset", "DesignSpec", "SpectralDecomposition", "TruthSpec",
    "generate_design", "generate_truth", "project_truth",
    "sample_linear_model", "spectral_decompose",
    # optimize
    "GridMinimum", "golden_section_min", "log_grid", "minimize_on_log_grid",
    # estimators
    "CvResult", "FitResult", "PenaltySpec", "fit_kernel_ridge", "fit_ridge",
    "kfold_select", "loocv_errors", "loocv_select", "predict_linear",
    "validate_kernel",
    # complexity
    "ComplexityReport", "RmtSpec", "ScalingRegimeInput", "insample_bound",
    "insample_mse_analytic", "kl_ridge_code", "lnml_normalizer",
    "minimax_worstcase_codelength", "mp_density", "mp_point_mass",
    "oracle_complexity_report", "rmt_redundancy_bound", "scaling_approximation",
    # kernels
    "DecayRegime", "KernelBoundResult", "KernelComplexityInput", "KernelSpec",
    "build_kernel", "c_alpha", "decay_regime_bound", "kernel_bound_objective",
    "kernel_mdl_bound", "kl_kernel_code", "power_law_eigenvalues",
    # practical
    "GRID_PRESETS", "PracSelection", "approx_redundancy",
    "estimate_noise_variance", "prac_objective_kernel", "prac_objective_linear",
    "resolve_grid", "select_lambda_prac_kernel", "select_lambda_prac_linear",
    # experiments
    "COMPARISON_SCHEMES", "ESTIMATORS", "CurvePoint", "ExperimentConfig",
    "IngestReport", "config_to_dict", "ingest_dataset", "points_to_frame",
    "run_bias_variance", "run_mdl_scaling", "run_selector_comparison",
]
