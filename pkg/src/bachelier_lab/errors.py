"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition; the message names the field."""


class NonFiniteSampleError(ArithmeticError):
    """A Monte Carlo sample produced NaN or infinity; the message locates it."""
