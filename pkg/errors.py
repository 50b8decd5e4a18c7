"""
Exception hierarchy for the K-g-frame toolkit.
"""

from typing import Optional


class KGFrameError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionMismatch(KGFrameError):
    """Operands live in modules of incompatible sizes."""


class NotHermitian(KGFrameError):
    """A Hermitian input was expected."""


class NotPositive(KGFrameError):
    """A positive (PSD) input was expected."""


class NoSolution(KGFrameError):
    """The factorization equation T X = T' has no solution."""


class HypothesisFailed(KGFrameError):
    """A construction hypothesis does not hold."""

    def __init__(self, predicate: str, message: Optional[str] = None):
        self.predicate = predicate
        super().__init__(message or f"hypothesis failed: {predicate}")


class NotTight(KGFrameError):
    """The family is not tight for the given operator."""


class DualityFailed(KGFrameError):
    """The second family is not a K-dual of the first."""


class ShapeMismatch(KGFrameError):
    """Per-atom destination modules of two families differ."""


class NotOrthogonal(KGFrameError):
    """The synthesis operators of two families are not orthogonal."""


class UnsupportedKind(KGFrameError):
    """Unknown construction kind requested."""


class ParseError(KGFrameError):
    """A scenario or report file could not be parsed or validated."""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class KernelFailure(KGFrameError):
    """An eigen or singular value kernel produced non-finite output."""


class CertificateFailed(KGFrameError):
    """A computed optimal constant failed its own Loewner certificate."""
