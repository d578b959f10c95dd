"""Exact-arithmetic toolkit for special subgroups of commutative algebraic
groups, intersection counting over finite products, coarse general position,
constrained filtrations and finite pregeometries."""

__version__ = "0.1.0"

from .errors import (BudgetError, DimensionError, EncodingError, EspoError,
                     GenericityError, InsufficientDataError, StrategyError,
                     ValidationError)
from .groups import GroupModel, additive, elliptic, multiplicative
from .sets import FiltrationSpec, PointSet
from .subgroups import SpecialSubgroupSpec, SubgroupHandle
from .counting import VarietySpec, count_intersection, fit_exponent
from .cgp import cgp_verdict

__all__ = [
    "BudgetError", "DimensionError", "EncodingError", "EspoError",
    "GenericityError", "InsufficientDataError", "StrategyError",
    "ValidationError", "GroupModel", "additive", "elliptic",
    "multiplicative", "FiltrationSpec", "PointSet", "SpecialSubgroupSpec",
    "SubgroupHandle", "VarietySpec", "count_intersection", "fit_exponent",
    "cgp_verdict", "__version__",
]
