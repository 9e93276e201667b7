"""Shared exception types.

Every enumerative kernel in the package is budgeted: callers state up front
how many items (domain points, patterns, potential edges) they are willing to
touch, and the kernel refuses with BudgetError instead of starting a run that
cannot finish at desk scale.  The command line maps BudgetError to its own
exit code so scripted callers can tell "too big" apart from "failed".
"""


class ZngError(Exception):
    """Base class for package-specific failures."""


class BudgetError(ZngError):
    """An enumeration or search would exceed the configured budget."""

    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget
