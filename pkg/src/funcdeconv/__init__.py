"""Functional deconvolution of periodic profiles by hyperbolic-wavelet
hard thresholding, with per-profile (separate) baseline, minimax-rate
calculators, and a simulation bench."""

from .exceptions import (
    ConfigError,
    FuncDeconvError,
    IllPosedKernel,
    InsufficientRange,
    LevelTooCoarse,
    LevelTooFine,
    NumericalError,
    RegimeWarning,
)
from .spectra import (
    KernelSpectrum,
    ObservationGrid,
    ProfileSpectrum,
    estimate_nu,
    fourier_coeffs,
    kernel_bounds,
    kernel_spectrum,
    spectrum_to_samples,
    validate_invertible,
)
from .meyer import MeyerBasis, meyer_aux, phi_hat, psi_hat, time_level_slices
from .spatial import SpatialBasis, spatial_level_slices
from .estimator import (
    FUNCTIONAL,
    SEPARATE,
    EstimatorConfig,
    HyperCoeffs,
    Reconstruction,
    ResolutionLimits,
    c_beta_bound,
    config_for,
    deconvolve,
    default_c_beta,
    estimate_coeffs,
    hard_threshold,
    j_capacity,
    jprime_capacity,
    reconstruct,
    resolution_limits,
    threshold_value,
)
from .rates import (
    BesovBall,
    ComparisonReport,
    RateReport,
    besov_norm,
    compare_strategies,
    exponent_2d,
    exponent_min_form,
    exponent_multi,
)
from .gridio import load_grid, save_grid
from .simlab import (
    MiseResult,
    SimConfig,
    kernel_grid,
    mise,
    paper_kernel,
    product_truth,
    run_mise,
    slope_files,
    synthesize_data,
    table1,
    test_function,
    write_table_csv,
    write_xy,
)

__version__ = "0.1.0"

__all__ = [
    "BesovBall",
    "ComparisonReport",
    "ConfigError",
    "EstimatorConfig",
    "FUNCTIONAL",
    "FuncDeconvError",
    "HyperCoeffs",
    "IllPosedKernel",
    "InsufficientRange",
    "KernelSpectrum",
    "LevelTooCoarse",
    "LevelTooFine",
    "MeyerBasis",
    "MiseResult",
    "NumericalError",
    "ObservationGrid",
    "ProfileSpectrum",
    "RateReport",
    "Reconstruction",
    "RegimeWarning",
    "ResolutionLimits",
    "SEPARATE",
    "SimConfig",
    "SpatialBasis",
    "besov_norm",
    "c_beta_bound",
    "compare_strategies",
    "config_for",
    "deconvolve",
    "default_c_beta",
    "estimate_coeffs",
    "estimate_nu",
    "exponent_2d",
    "exponent_min_form",
    "exponent_multi",
    "fourier_coeffs",
    "hard_threshold",
    "j_capacity",
    "jprime_capacity",
    "kernel_bounds",
    "kernel_grid",
    "kernel_spectrum",
    "load_grid",
    "meyer_aux",
    "mise",
    "paper_kernel",
    "phi_hat",
    "product_truth",
    "psi_hat",
    "reconstruct",
    "resolution_limits",
    "run_mise",
    "save_grid",
    "slope_files",
    "spatial_level_slices",
    "spectrum_to_samples",
    "synthesize_data",
    "table1",
    "test_function",
    "threshold_value",
    "time_level_slices",
    "validate_invertible",
    "write_table_csv",
    "write_xy",
]
