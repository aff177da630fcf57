"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Input file does not parse under the declared format."""


class SelfLoopError(GraphFormatError):
    """An edge joins a node to itself."""


class EmptyInputError(GraphFormatError):
    """Input file contains no usable records."""


class DensityError(ValueError):
    """Graph density is outside the supported range (no missing edge)."""


class ConvergenceError(RuntimeError):
    """Iterative method failed to converge within its iteration cap."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SelfCheckError(RuntimeError):
    """A reported value failed re-verification at emission time."""
