"""Asymptotics of log det(I - beta H_N(f)) and Tr H_N(f)^k for Hankel matrices
whose symbols have jump discontinuities."""

from .asymptotics import AsymptoticPrediction, TraceCoefficient, gamma_exponent, mu_k, mu_series_sum
from .detcalc import (
    ConvergenceReport,
    GridSpec,
    TruncationCache,
    corollary_square_check,
    log_det_direct,
    log_det_series,
    slope_estimate,
    verify,
    verify_traces,
)
from .errors import (
    ConfigError,
    DimensionTooLarge,
    DomainError,
    EigensolverFailed,
    HankelAsymError,
    InsufficientData,
    QuadratureNotConverged,
    SeriesNotConverged,
    SingularMatrix,
    SymbolError,
)
from .hankel import HankelTruncation, compressed_square, hs_norm_sq, spectral_norm, tail_hs, trace_power, truncate
from .special import (
    SeriesEvalConfig,
    arcsin_c,
    arcsin_sq_of_square,
    beta_half,
    log_integral,
    sech_integral,
    series_S,
    series_T,
)
from .symbol import (
    CirclePoint,
    Symbol,
    builtin,
    evaluate,
    fourier_coefficient,
    fourier_coefficients,
    hilbert_psi,
    indicator_eta,
    jump_height,
    load_symbol,
    model_symbol,
)

__version__ = "0.1.0"
