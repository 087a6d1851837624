"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UsageError(ValueError):
    """Arguments are individually valid but may not be combined this way."""


class PrecisionError(ArithmeticError):
    """The precision cap was reached before a comparison could be decided."""


class ReductionError(RuntimeError):
    """No convergent in the available supply gave a certified positive epsilon."""
