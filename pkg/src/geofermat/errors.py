"""Exception hierarchy shared by every geofermat module."""


class GeofermatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GeofermatError, ValueError):
    """An input lies outside the domain of an operation."""


class AmbiguityError(DomainError):
    """The minimizing geodesic between two points is not unique."""


class DegenerateTriangleError(DomainError):
    """The triangle collapses to a segment or a point."""


class UnsupportedSurfaceError(GeofermatError, TypeError):
    """The operation is not defined for the given kind of surface."""


class InvalidFanError(DomainError):
    """Three angles do not form a valid fan around an interior point."""


class EpsilonRangeError(DomainError):
    """The perturbation is too large for the constructed angles to stay valid."""


class InvalidApexAngleError(DomainError):
    """The apex angle exceeds the total angle of the unrolled cone sector."""


class SceneError(GeofermatError, ValueError):
    """A scene file is malformed or incomplete for the requested command."""


class ConvergenceError(GeofermatError, RuntimeError):
    """The minimizer did not reach the requested residual.

    The best iterate found so far is kept on ``best`` so callers can
    inspect or report it.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
