"""Shared exception types."""

from __future__ import annotations


class InvalidComplex(ValueError):
    """Input does not describe a valid pure complex."""


class FaceNotFound(KeyError):
    """A face was queried that is not present in the complex."""


class DimensionMismatch(ValueError):
    """An operation was invoked outside its valid dimension range."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, needed: int, budget: int, context: str = ""):
        self.needed = needed
        self.budget = budget
        self.context = context
        msg = f"enumeration needs {needed} evaluations, budget is {budget}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class EigenSolverError(RuntimeError):
    """The rotation eigensolver failed to converge."""
