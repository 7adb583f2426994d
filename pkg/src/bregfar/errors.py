"""Exception types shared across the package."""


class BregfarError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(BregfarError, ValueError):
    """An input vector or matrix has the wrong dimension."""


class DomainViolation(BregfarError, ValueError):
    """A point lies outside the open domain where an operation is defined.

    ``coordinate`` is the first offending coordinate index (or None when the
    violation is not coordinatewise), ``value`` its offending value.
    """

    def __init__(self, message, coordinate=None, value=None):
        super().__init__(message)
        self.coordinate = coordinate
        self.value = value


class HessianUndefined(BregfarError):
    """Second derivative does not exist (or is singular) at the point."""


class NonConvergence(BregfarError):
    """A safeguarded numeric inversion exhausted its iteration cap."""


class PointSetError(BregfarError, ValueError):
    """A point set violates the nonempty-compact-inside-domain contract."""


class SameWitness(BregfarError):
    """Tie search precondition failed: both segment ends share a witness."""


class MultivaluedGradient(BregfarError):
    """The farthest-distance function is not differentiable at the point:
    the farthest-point map is multi-valued there."""
