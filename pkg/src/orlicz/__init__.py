"""Generalized premia and risk measures on finite discrete distributions."""

from .base import (
    DimensionError,
    DomainError,
    InvalidPhiError,
    NotConvexError,
    NotGAConvexError,
    OrliczError,
    ToleranceError,
    UnboundedError,
)
from .duality import (
    AlphaBridgeReport,
    DualCertificate,
    HGDualReport,
    alpha_bridge_report,
    alpha_from_beta,
    alpha_penalty,
    beta_conjugate,
    beta_on_grid,
    beta_primal,
    dual_search,
    hg_dual_check,
    relative_entropy,
    simplex_grid,
)
from .functions import (
    Expectile,
    GeometricExpectile,
    GeometricMean,
    LpQuantile,
    LpqQuantile,
    OrliczFunction,
    PiecewiseLinear,
    Power,
    QuantileStep,
    ValidationReport,
    Violation,
    conjugate,
    is_convex,
    is_ga_convex,
    piecewise_linear_from_text,
    validate,
)
from .hg import GGCounterexampleReport, HGResult, gg_counterexample_check, hg_risk_measure
from .premium import (
    CashAdditivityReport,
    PremiumResult,
    cash_additivity_probe,
    expectile,
    expected_cash_behavior,
    geometric_expectile,
    left_quantile_premium,
    lp_quantile,
    lpq_quantile,
    orlicz_premium,
    phi_moment,
    premium_of_distribution,
)
from .prob import (
    DiscreteDistribution,
    FiniteProbabilitySpace,
    MeasureChange,
    RandomVariable,
    as_random_variable,
    comonotone_integral,
    distribution_of,
    ess_sup,
    expect,
    mixture,
    quantile,
    rv,
)
from .properties import (
    ConvexityWitness,
    Failure,
    SuiteReport,
    find_convexity_witness,
    run_axioms_suite,
    run_collapse_suite,
    run_convexity_suite,
    run_cxls_suite,
    run_gg_convexity_suite,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaBridgeReport",
    "CashAdditivityReport",
    "ConvexityWitness",
    "DimensionError",
    "DiscreteDistribution",
    "DomainError",
    "DualCertificate",
    "Expectile",
    "Failure",
    "FiniteProbabilitySpace",
    "GGCounterexampleReport",
    "GeometricExpectile",
    "GeometricMean",
    "HGDualReport",
    "HGResult",
    "InvalidPhiError",
    "LpQuantile",
    "LpqQuantile",
    "MeasureChange",
    "NotConvexError",
    "NotGAConvexError",
    "OrliczError",
    "OrliczFunction",
    "PiecewiseLinear",
    "Power",
    "PremiumResult",
    "QuantileStep",
    "RandomVariable",
    "SuiteReport",
    "ToleranceError",
    "UnboundedError",
    "ValidationReport",
    "Violation",
    "alpha_bridge_report",
    "alpha_from_beta",
    "alpha_penalty",
    "as_random_variable",
    "beta_conjugate",
    "beta_on_grid",
    "beta_primal",
    "cash_additivity_probe",
    "comonotone_integral",
    "conjugate",
    "distribution_of",
    "dual_search",
    "ess_sup",
    "expect",
    "expected_cash_behavior",
    "expectile",
    "find_convexity_witness",
    "geometric_expectile",
    "gg_counterexample_check",
    "hg_dual_check",
    "hg_risk_measure",
    "is_convex",
    "is_ga_convex",
    "left_quantile_premium",
    "lp_quantile",
    "lpq_quantile",
    "mixture",
    "orlicz_premium",
    "phi_moment",
    "piecewise_linear_from_text",
    "premium_of_distribution",
    "quantile",
    "relative_entropy",
    "run_axioms_suite",
    "run_collapse_suite",
    "run_convexity_suite",
    "run_cxls_suite",
    "run_gg_convexity_suite",
    "run_suite",
    "rv",
    "simplex_grid",
    "validate",
]
