"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every error raised by gnum."""


class RankDeficient(GeometryError):
    pass


class NonInteger(GeometryError):
    pass


class FullSpan(GeometryError):
    """The vectors span the whole space, so the projected lattice is zero."""


class DimensionCap(GeometryError):
    pass


class SizeCap(GeometryError):
    pass


class Degenerate(GeometryError):
    """Input is not a full-dimensional convex body."""


class NotSymmetric(GeometryError):
    pass


class NotAntiBlocking(GeometryError):
    pass


class Orientation(GeometryError):
    pass


class NonLatticePolygon(GeometryError):
    pass


class ToleranceUnreachable(GeometryError):
    pass


class Infeasible(GeometryError):
    pass


class MalformedTranscript(GeometryError):
    pass


class MalformedBody(GeometryError):
    pass


class DegenerateInstance(GeometryError):
    pass
