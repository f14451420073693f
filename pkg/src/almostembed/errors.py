"""Exception types raised by the library.

All of them derive from :class:`GeometryError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one thing.
"""


class GeometryError(ValueError):
    """Base class for every error raised by almostembed."""


class DegeneratePoint(GeometryError):
    """An angle was requested at a vertex that coincides with one of its legs."""


class PointOnPolyline(GeometryError):
    """A basepoint lies on the polyline it should avoid."""


class EndpointMismatch(GeometryError):
    """Two polylines cannot be concatenated or an edge path misses its vertex."""


class NotGeneralPosition(GeometryError):
    """Two segments meet in a non-transversal way."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class RoundingGuard(GeometryError):
    """A floating oracle sum was too far from the integer it should equal."""


class DegenerateTurn(GeometryError):
    """A turning angle of a closed polyline is undefined."""


class NotACycle(GeometryError):
    pass


class NotTriodic(GeometryError):
    pass


class NotCyclicChain(GeometryError):
    pass


class DegenerateEndpoints(GeometryError):
    pass


class CannotRoute(GeometryError):
    """A finger move or loop could not be placed at any scale tried."""


class InfeasibleTarget(GeometryError):
    pass


class ExhaustedRetries(GeometryError):
    def __init__(self, message, seed=None, attempts=None):
        super().__init__(message)
        self.seed = seed
        self.attempts = attempts


class CyclesIntersect(GeometryError):
    pass


class NotGenericCone(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class InvalidDrawing(GeometryError):
    """A drawing file or constructor argument is inconsistent."""
