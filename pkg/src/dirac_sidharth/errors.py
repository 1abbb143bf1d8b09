"""Exception types shared across the package.

All of them derive from ``ValueError`` so callers that only care about bad
input can catch one thing; the CLI maps every one of them to exit code 2.
"""


class UsageError(ValueError):
    """Bad argument: unknown tag, index out of range, mismatched objects."""


class ValidationError(ValueError):
    """Input violates a documented invariant (non-unit vector, aliasing...)."""


class DomainError(ValueError):
    """Quantity undefined at the requested point (E = 0, alpha = 0, ...)."""


class NumericError(ArithmeticError):
    """A numerical routine failed (e.g. the eigensolver did not converge)."""
