"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An argument is outside the documented parameter range."""


class DomainError(ValueError):
    """An operation is undefined for the given mathematical input."""


class PreconditionError(ValueError):
    """The hypotheses of a checked statement are not met by the input."""


class UnsupportedFamilyError(InvalidParameterError):
    pass


class BudgetError(RuntimeError):
    """A configured size or iteration budget would be exceeded."""


class ValidationError(ValueError):
    """A character table document or object fails an invariant.

    The message names the first invariant that failed.
    """


class BoundViolation(AssertionError):
    """A bound that is a theorem was observed to fail."""
