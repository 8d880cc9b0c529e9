"""Moving-average partial sums with heavy-tailed noise under the M2 metric."""

from ._core import (
    Coefficients,
    CoefficientViolation,
    StepFunction,
    TailModel,
    __version__,
    build_paths,
    limit_cf,
    lk_exponent,
    m2_distance,
    make_tail_model,
    norming_constant,
    partial_sum_path,
    run_experiment,
    sample_noise,
    sampled_hausdorff,
    uniform_distance,
    validate_coefficients,
)

__all__ = [
    "Coefficients",
    "CoefficientViolation",
    "StepFunction",
    "TailModel",
    "__version__",
    "build_paths",
    "limit_cf",
    "lk_exponent",
    "m2_distance",
    "make_tail_model",
    "norming_constant",
    "partial_sum_path",
    "run_experiment",
    "sample_noise",
    "sampled_hausdorff",
    "uniform_distance",
    "validate_coefficients",
]
