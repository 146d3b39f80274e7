"""Exception types shared across the package."""


class NSCurveError(Exception):
    """Base class for all errors raised by nscurve."""


class ParseError(NSCurveError):
    """Malformed text input; carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class LevelOverflow(NSCurveError):
    """An operation would need a tower level beyond the configured cap."""


class NeedsSeparableExtension(NSCurveError):
    """A step requires a separable algebraic extension of F_p(t)."""


class PointNotOnCurve(NSCurveError):
    """The supplied point does not lie on the curve."""


class NotIsolated(NSCurveError):
    """Local intersection dimension keeps growing; common component likely."""


class NotUnibranch(NSCurveError):
    """The germ splits into several branches (or is not reduced)."""


class TruncationTooSmall(NSCurveError):
    """A composed series vanished identically at the working truncation."""


class AllDerivativesVanish(NSCurveError):
    """Every composed derivative is zero at the working truncation."""


class NotInvariant(NSCurveError):
    """Descent was requested for an ideal that is not base-change invariant."""


class NoWitness(NSCurveError):
    """No invariant line or irreducible conic exists through the point."""


class DistinctTypes(NSCurveError):
    """Pair normalization was asked for a mixed type-1/type-2 pair."""


class InvalidParameters(NSCurveError):
    """Family parameters violate a constraint; the message names it."""


class InvariantLine(NSCurveError):
    """The cubed line of a classification input is base-change invariant."""
