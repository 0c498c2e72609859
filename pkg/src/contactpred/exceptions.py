"""Exception hierarchy shared by every module."""


class ContactPredError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ContactPredError, ValueError):
    """A CSV row could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ParseError):
    """A row parsed but violates a domain invariant."""


class UnknownVertexError(ContactPredError, KeyError):
    """A participant id is not a vertex of the graph (or not in the core)."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(vertex)

    def __str__(self):
        return f"unknown vertex {self.vertex!r}"


class ConvergenceError(ContactPredError, ArithmeticError):
    """Power iteration did not reach the requested tolerance."""

    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (L1 residual {residual:.3e})"
        )


class UndefinedAUCError(ContactPredError, ValueError):
    """AUC needs at least one positive and one negative."""

    def __init__(self, positives, negatives, excluded=0):
        self.positives = positives
        self.negatives = negatives
        self.excluded = excluded
        super().__init__(
            f"AUC undefined: {positives} positives, {negatives} negatives "
            f"({excluded} excluded)"
        )


class UndefinedLiftError(ContactPredError, ValueError):
    """Lift is undefined when the population mean is not positive."""


class ConfigurationError(ContactPredError, ValueError):
    """Invalid or contradictory configuration."""
