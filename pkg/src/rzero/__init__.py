"""rzero: evaluation of Riemann's auxiliary function R(s), argument-principle
zero counting with Backlund-lemma certificates, zero location, and numerical
validation of the counting formula

    N(T) = T/(4 pi) log(T/(2 pi)) - T/(4 pi) - (1/2) sqrt(T/(2 pi)) + error.
"""

from .auxiliary import (
    EvaluationResult,
    QuadratureSpec,
    r_asymptotic,
    r_derivative,
    r_eval,
    r_integral,
    r_value,
    zeta_from_r,
    zeta_reference,
)
from .counting import (
    ArgTrace,
    BacklundInput,
    ContourSpec,
    CountResult,
    PathSegment,
    arg_variation,
    backlund_bound,
    count_zeros,
    main_term,
    modulus_bound,
    residual_table,
    winding_number,
)
from .special_functions import (
    EtaValue,
    SeriesEvaluation,
    arg_chi_asymptotic,
    chi,
    eta,
    eta_series,
    log_chi,
    log_gamma,
    log_s_series,
)
from .zeros import (
    Box,
    Zero,
    ZeroStatistics,
    isolate_zeros,
    locate_zeros,
    refine_zero,
    zero_statistics,
)

__version__ = "0.1.0"

__all__ = [
    "ArgTrace", "BacklundInput", "Box", "ContourSpec", "CountResult",
    "EtaValue", "EvaluationResult", "PathSegment", "QuadratureSpec",
    "SeriesEvaluation", "Zero", "ZeroStatistics", "arg_chi_asymptotic",
    "arg_variation", "backlund_bound", "chi", "count_zeros", "eta",
    "eta_series", "isolate_zeros", "locate_zeros", "log_chi", "log_gamma",
    "log_s_series", "main_term", "modulus_bound", "r_asymptotic",
    "r_derivative", "r_eval", "r_integral", "r_value", "refine_zero",
    "residual_table", "winding_number", "zero_statistics", "zeta_from_r",
    "zeta_reference",
]
