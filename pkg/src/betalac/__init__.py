"""Exact arithmetic over Pisot/Salem bases, greedy beta-expansions, sparse
series enclosures, Minkowski sumset statistics, and empirical checkers for
independence-criteria hypotheses."""

from .algebraic import (
    AlgebraicBase,
    BasePolynomial,
    Classification,
    FieldElement,
    certified_floor,
    classify_base,
    embed_real,
    field_arith,
)
from .config import DEFAULT_CONFIG, RunConfig, geometric_grid
from .criteria import (
    CriteriaPolicy,
    CriteriaReport,
    FitResult,
    GkPolynomial,
    check_admissible,
    check_cri1,
    check_cri2,
    check_mai4_sign,
    check_tra1,
    fit_growth_exponent,
    g_eval,
    sigma_k,
)
from .digits import DigitStream, base_b_expand, beta_expand, lambda_digits, reconstruct
from .intervals import ComplexBox, RealEnclosure, as_fraction
from .sequences import (
    Explicit,
    ExponentSequence,
    Geometric,
    LogPower,
    PowerFloor,
    ScaledFactorial,
    SupportSet,
    WeightedGeometric,
    inverse_count,
    lambda_count,
    psi,
    sequence_from_json,
    support_up_to,
    theta,
)
from .series import (
    RelationEvaluator,
    RelationPolynomial,
    SeriesSpec,
    SeriesValue,
    evaluate,
    rho_coefficients,
    y_n_count,
    y_r_recurrence_check,
    y_r_value,
)
from .sumsets import GapPoint, SumsetSpec, gap_profile, k_fold_sum, weighted_sum

__version__ = "0.1.0"

__all__ = [
    "AlgebraicBase",
    "BasePolynomial",
    "Classification",
    "ComplexBox",
    "CriteriaPolicy",
    "CriteriaReport",
    "DEFAULT_CONFIG",
    "DigitStream",
    "Explicit",
    "ExponentSequence",
    "FieldElement",
    "FitResult",
    "GapPoint",
    "Geometric",
    "GkPolynomial",
    "LogPower",
    "PowerFloor",
    "RealEnclosure",
    "RelationEvaluator",
    "RelationPolynomial",
    "RunConfig",
    "ScaledFactorial",
    "SeriesSpec",
    "SeriesValue",
    "SumsetSpec",
    "SupportSet",
    "WeightedGeometric",
    "as_fraction",
    "base_b_expand",
    "beta_expand",
    "certified_floor",
    "check_admissible",
    "check_cri1",
    "check_cri2",
    "check_mai4_sign",
    "check_tra1",
    "classify_base",
    "embed_real",
    "evaluate",
    "field_arith",
    "fit_growth_exponent",
    "g_eval",
    "gap_profile",
    "geometric_grid",
    "inverse_count",
    "k_fold_sum",
    "lambda_count",
    "lambda_digits",
    "psi",
    "reconstruct",
    "rho_coefficients",
    "sequence_from_json",
    "sigma_k",
    "support_up_to",
    "theta",
    "weighted_sum",
    "y_n_count",
    "y_r_recurrence_check",
    "y_r_value",
]
