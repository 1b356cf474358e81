"""Exception types shared across the package.

Two failure modes are kept apart on purpose: bad input (caller error,
CLI exit code 2) and exceeding an exact-search budget (the computation
is well posed but too large, CLI exit code 3).
"""


class ValidationError(ValueError):
    """Input fails a documented precondition or invariant."""


class BudgetError(RuntimeError):
    """Exact computation refused: the declared search budget is exceeded."""
