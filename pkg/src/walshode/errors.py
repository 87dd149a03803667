"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A request would materialize more state than the configured cap allows."""


class DivergenceError(RuntimeError):
    """Picard iteration produced a non-finite or runaway iterate.

    Carries the partial solution trace accumulated up to the failing sweep.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class ExprError(ValueError):
    """Expression source could not be parsed; ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprEvalError(ArithmeticError):
    """Expression evaluation hit a numeric domain error (÷0, log of ≤0, √ of <0)."""
