"""Python bindings for the relab numerical laboratory."""

from ._core import (  # noqa: F401
    FourVector,
    boost,
    minkowski_dot,
    emit_pair,
    polarizer_matrix,
    coincidence_analytic,
    estimate_coincidence,
    correlation_function,
    chsh,
    chsh_sampled,
    bayes_decomposition,
    chart_conventional,
    chart_equal_aging,
    emit_chart_json,
    decay_experiment,
    decay_sensitivity,
    Worldline,
    WorldlineSample,
    Particle,
    DomainError,
    InsufficientHistoryError,
    OutOfRangeError,
    ParseError,
    retarded_field,
    regularized_field_oracle,
    integrate_json,
    lightcone_intersection,
)

__all__ = [name for name in dir() if not name.startswith("_")]
