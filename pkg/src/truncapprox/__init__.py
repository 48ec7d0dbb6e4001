"""Approximate p(1) for polynomials with a known zero-free region, from a
handful of low-order coefficients, and count graph structures with it."""

from .approximator import (
    Estimate,
    approximate_derivative_ratio,
    approximate_log_p1,
    approximate_p1,
    log_expansion,
)
from .errors import (
    ApproxError,
    ConstantPolynomial,
    ContainmentCheckFailed,
    DeltaOutOfRange,
    InsufficientCoefficients,
    KTooLarge,
    NonzeroConstantTerm,
    NotClawFree,
    ParseError,
    TooLargeForOracle,
    ZeroConstantTerm,
)
from .graphcount import (
    CountVector,
    Graph,
    Kind,
    delta_for,
    estimate_average_size,
    estimate_total,
    exact_total,
    is_claw_free,
    max_degree,
    required_k,
    structure_counts,
)
from .logtaylor import LogSeries, log_taylor, taylor_sum_at_one
from .poly import (
    ExactComplex,
    PolynomialPrefix,
    TruncatedSeries,
    compose_truncated,
    evaluate_exact,
    truncated_multiply,
)
from .transforms import (
    RootRegion,
    TransformPlan,
    interval_transform,
    real_rooted_transform,
    required_order,
    sector_transform,
    stable_transform,
)

__version__ = "0.1.0"
