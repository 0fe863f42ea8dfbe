"""Relative growth indicators of growth scales and their integral forms."""

from .errors import (
    BadBracket,
    BelowDomain,
    BelowRange,
    DegenerateGrid,
    DomainError,
    GrowthError,
    ModelError,
    NonConvergent,
    NonIntegralWinding,
    NonLevelZero,
    OnCircle,
    Overflow,
    ParseError,
    PoleError,
    PoleOnCircle,
    SingularNode,
)
from .indicators import (
    GridSpec,
    IndicatorEstimate,
    rel_order,
    rel_type,
    rel_type_inverse_form,
    rel_weak_type,
)
from .integralrep import (
    ConvergenceVerdict,
    LemmaBehavior,
    TransitionResult,
    Verdict,
    classify,
    integrand_log,
    lemma_ratio,
    transition,
)
from .literals import model_literal, parse_model, parse_scale, scale_literal
from .models import (
    ExpPower,
    ExpTower,
    FactoredRational,
    Polynomial,
    Product,
    Sum,
    count_in_disk,
    evaluate,
    max_modulus,
)
from .nevanlinna import NevanlinnaBreakdown, characteristic, counting, proximity
from .scales import (
    DerivedCharacteristic,
    DerivedMaxMod,
    IteratedScale,
    SinLogScale,
    TabulatedMonotone,
    composed_ratio,
    scale_eval,
    scale_inverse,
)
from .tower import TowerReal, iter_exp, iter_log, t_add, t_cmp, t_mul, t_pow, to_float
from .verify import CatalogPair, GroundTruth, SuiteConfig, run_suite, standard_catalog

__version__ = "0.1.0"

__all__ = [
    "BadBracket",
    "BelowDomain",
    "BelowRange",
    "CatalogPair",
    "ConvergenceVerdict",
    "DegenerateGrid",
    "DerivedCharacteristic",
    "DerivedMaxMod",
    "DomainError",
    "ExpPower",
    "ExpTower",
    "FactoredRational",
    "GridSpec",
    "GroundTruth",
    "GrowthError",
    "IndicatorEstimate",
    "IteratedScale",
    "LemmaBehavior",
    "ModelError",
    "NevanlinnaBreakdown",
    "NonConvergent",
    "NonIntegralWinding",
    "NonLevelZero",
    "OnCircle",
    "Overflow",
    "ParseError",
    "PoleError",
    "PoleOnCircle",
    "Polynomial",
    "Product",
    "SinLogScale",
    "SingularNode",
    "SuiteConfig",
    "Sum",
    "TabulatedMonotone",
    "TowerReal",
    "TransitionResult",
    "Verdict",
    "characteristic",
    "classify",
    "composed_ratio",
    "count_in_disk",
    "counting",
    "evaluate",
    "integrand_log",
    "iter_exp",
    "iter_log",
    "lemma_ratio",
    "max_modulus",
    "model_literal",
    "parse_model",
    "parse_scale",
    "proximity",
    "rel_order",
    "rel_type",
    "rel_type_inverse_form",
    "rel_weak_type",
    "run_suite",
    "scale_eval",
    "scale_inverse",
    "scale_literal",
    "standard_catalog",
    "t_add",
    "t_cmp",
    "t_mul",
    "t_pow",
    "to_float",
    "transition",
]
