"""Exception types shared across the package."""


class ExpressionSyntaxError(ValueError):
    """Malformed expression source. Carries position and expected tokens."""

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at position {position}"
                         + (f" (expected {', '.join(expected)})" if expected else ""))
        self.position = position
        self.expected = tuple(expected)


class UnknownIdentifierError(ValueError):
    """Identifier in the expression source is not t, pi, or a known function."""


class DomainError(ValueError):
    """Function evaluation left its valid domain (e.g. division blow-up)."""


class InvalidLambdaError(ValueError):
    """Gap parameter lambda outside (0, pi/2)."""


class InvalidProblemError(ValueError):
    """Problem constants violate k > 0 or a < b."""


class BudgetExceededError(RuntimeError):
    """Oscillatory quadrature would need more panels than the configured cap."""


class NearResonanceError(ValueError):
    """Requested epsilon lies outside every non-resonance window for this lambda."""

    def __init__(self, message, nearest_m=None, distance_theta=None):
        super().__init__(message)
        self.nearest_m = nearest_m
        self.distance_theta = distance_theta


class SingularSystemError(RuntimeError):
    """Finite-difference system is singular or too ill-conditioned to trust."""


class DegenerateFitError(RuntimeError):
    """Too many error samples vanished for a meaningful log-log rate fit."""
