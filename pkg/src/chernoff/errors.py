"""Exception types shared across the package."""


class ChernoffError(Exception):
    """Base class for all package-specific errors."""


class OverflowDomain(ChernoffError):
    """Requested evaluation would overflow double precision."""


class AccuracyUnreachable(ChernoffError):
    """The requested error target cannot be met in double precision."""


class NotIntegrable(ChernoffError, ValueError):
    """Airy term is not in the domain of the reduction recurrence (ell <= k)."""


class ContourTooLeft(ChernoffError, ValueError):
    """Integration contour does not pass to the right of the Airy zeros."""


class NoConvergence(ChernoffError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class UnknownStatistic(ChernoffError, ValueError):
    """Statistic name not recognised by the Monte Carlo estimator."""
