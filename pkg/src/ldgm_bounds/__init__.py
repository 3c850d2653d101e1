"""Lower bounds on the rate-distortion performance of sparse generator codes.

The package splits into four layers:

* :mod:`ldgm_bounds.numerics`: scalar entropy helpers and root finding.
* :mod:`ldgm_bounds.degree`: generator degree distributions.
* :mod:`ldgm_bounds.bounds`: the bound families themselves, plus curve
  sampling.
* :mod:`ldgm_bounds.exact`: exact weight enumeration and brute-force
  verification on concrete small codes.
"""

from .bounds import (
    BoundCurve,
    CoverageExponent,
    CURVE_KINDS,
    NoSolutionError,
    RatePoint,
    conjectured_exit_distortion_bound,
    conjectured_exit_rate_bound,
    counting_bound_distortion,
    coverage_exponent,
    parametric_distortion,
    parametric_endpoints,
    parametric_rate,
    poisson_ensemble_distortion_bound,
    poisson_ensemble_rate_bound,
    sample_curve,
    shannon_distortion,
    solve_x_for_rate,
    test_channel_distortion_bound,
    test_channel_rate_bound,
)
from .degree import DegreeDistribution, TruncationError, parse_degree_literal
from .exact import (
    BLOCKLENGTH_LIMIT,
    BudgetError,
    CoverProfile,
    GENERATOR_LIMIT,
    LdgmCode,
    VerificationReport,
    WeightEnumerator,
    code_from_text,
    code_to_text,
    coefficient_growth_exponent,
    coefficient_lower_bound,
    covered_fraction,
    distance_transform,
    encode,
    optimal_average_distortion,
    read_code_file,
    sample_code,
    verify_code,
    weight_enumerator,
    write_code_file,
)
from .numerics import (
    BracketError,
    binary_entropy,
    bisect_monotone,
    inverse_binary_entropy,
    kl_bernoulli,
)

__version__ = "0.1.0"

__all__ = [
    "BLOCKLENGTH_LIMIT",
    "BoundCurve",
    "BracketError",
    "BudgetError",
    "CURVE_KINDS",
    "CoverProfile",
    "CoverageExponent",
    "DegreeDistribution",
    "GENERATOR_LIMIT",
    "LdgmCode",
    "NoSolutionError",
    "RatePoint",
    "TruncationError",
    "VerificationReport",
    "WeightEnumerator",
    "binary_entropy",
    "bisect_monotone",
    "code_from_text",
    "code_to_text",
    "coefficient_growth_exponent",
    "coefficient_lower_bound",
    "conjectured_exit_distortion_bound",
    "conjectured_exit_rate_bound",
    "counting_bound_distortion",
    "coverage_exponent",
    "covered_fraction",
    "distance_transform",
    "encode",
    "inverse_binary_entropy",
    "kl_bernoulli",
    "optimal_average_distortion",
    "parametric_distortion",
    "parametric_endpoints",
    "parametric_rate",
    "parse_degree_literal",
    "poisson_ensemble_distortion_bound",
    "poisson_ensemble_rate_bound",
    "read_code_file",
    "sample_code",
    "sample_curve",
    "shannon_distortion",
    "solve_x_for_rate",
    "test_channel_distortion_bound",
    "test_channel_rate_bound",
    "verify_code",
    "weight_enumerator",
    "write_code_file",
]
