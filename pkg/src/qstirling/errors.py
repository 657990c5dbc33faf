"""Exception types raised by qstirling."""


class InvalidInputError(ValueError):
    """A parameter is non-finite, out of range, or structurally inconsistent."""


class DivergenceError(ArithmeticError):
    """Relative entropy is infinite because the support condition fails."""
