"""Exception types shared across the package."""

from __future__ import annotations


class PreconditionError(ValueError):
    """An argument violates a documented precondition (bad n, p, m, ...)."""


class AlgebraError(ArithmeticError):
    """An algebraic identity that must hold did not.

    Raised for inexact polynomial division, coefficients that fail to land in
    the expected subfield, and similar internal consistency failures.
    """


class ConstructionError(AlgebraError):
    """The code constructor produced (or was asked for) an invalid object."""


class NotGoodTriplet(PreconditionError):
    """(n, p, m) admits no non-trivial sigma_m-isotropic ideal."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} needs {required} items, budget is {budget}")
