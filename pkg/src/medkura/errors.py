"""Exception types raised by medkura."""


class MedKuraError(Exception):
    """Base class for all library errors."""


class InvalidGeometry(MedKuraError, ValueError):
    """Non-finite coordinates, degenerate windows or malformed descriptors."""


class EmptyOnWindow(MedKuraError):
    """The sampled set does not meet the (fattened) window."""


class ToleranceConflict(MedKuraError, ValueError):
    """Cluster separation too small relative to sampling and distance slack."""


class OnSet(MedKuraError):
    """The query point lies on the set (distance below tolerance)."""


class NotUnivalent(MedKuraError):
    """The nearest-point multifunction has several clusters at the query."""


class NonSmooth(MedKuraError):
    """A graph descriptor has no second derivative at the requested abscissa."""


class ZeroCurvature(MedKuraError):
    """No focal point exists on the requested side of the curve."""


class ScheduleTooShort(MedKuraError):
    """Fewer schedule entries than the requested tail length."""


class HypothesisFailed(MedKuraError):
    """The family does not converge, so the main inclusion cannot be tested."""


class OriginMissing(MedKuraError):
    """Dilatation requires the set to contain the origin."""
