from ._core import (
    AttackParams,
    ClosedFormReport,
    DomainError,
    IntegrityError,
    SearchBoundError,
    UnsatisfiableError,
    evaluate,
    expected_absorption_time,
    expected_duration,
    expected_left_steps_given_ruin,
    expected_revenue,
    honest_revenue_ratio,
    log_beta,
    min_profitable_value_asymptotic,
    min_profitable_value_exact,
    min_safe_confirmations,
    optimal_threshold,
    reg_inc_beta,
    revenue_ratio,
    ruin_probability,
    simulate,
    success_probability,
    success_probability_inf,
)

__all__ = [
    "AttackParams",
    "ClosedFormReport",
    "DomainError",
    "IntegrityError",
    "SearchBoundError",
    "UnsatisfiableError",
    "evaluate",
    "expected_absorption_time",
    "expected_duration",
    "expected_left_steps_given_ruin",
    "expected_revenue",
    "honest_revenue_ratio",
    "log_beta",
    "min_profitable_value_asymptotic",
    "min_profitable_value_exact",
    "min_safe_confirmations",
    "optimal_threshold",
    "reg_inc_beta",
    "revenue_ratio",
    "ruin_probability",
    "simulate",
    "success_probability",
    "success_probability_inf",
]
