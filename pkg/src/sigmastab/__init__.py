"""Linear cyclic stabilizer codes built from sigma_m-isotropic ideals of
F_{p^2}[X]/(X^n - 1), with distance analysis, an algebraic decoder and a
depolarizing-channel simulator."""

from __future__ import annotations

from .blueprint import CodeBlueprint, GoodTriplet, construct, strategy_select, validate_good_triplet
from .errors import AlgebraError, BudgetExceeded, ConstructionError, NotGoodTriplet, PreconditionError

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "BudgetExceeded",
    "CodeBlueprint",
    "ConstructionError",
    "GoodTriplet",
    "NotGoodTriplet",
    "PreconditionError",
    "construct",
    "strategy_select",
    "validate_good_triplet",
]
