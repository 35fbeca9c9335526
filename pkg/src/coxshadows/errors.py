"""Exception types shared across the package."""


class CoxshadowsError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedType(CoxshadowsError):
    """The requested family/rank pair is not a valid crystallographic type."""


class NotAffine(CoxshadowsError):
    """An operation that needs an affine group was given a finite one."""


class NotIncident(CoxshadowsError):
    """The alcove does not contain the panel it was paired with."""


class NotWallConsistent(CoxshadowsError):
    """A custom orientation table assigns sides to only half of a wall."""


class NotPeriodic(CoxshadowsError):
    """The orientation is not constant along parallel classes of walls."""


class PositionOutOfRange(CoxshadowsError):
    """A fold position points outside the letters of the word."""


class WordTooLong(CoxshadowsError):
    """The word exceeds the cap of an exponential enumeration."""


class BoundRequiresWeylOrientation(CoxshadowsError):
    """A fold-count bound was requested for an orientation where pruning
    by fold count is not known to be sound."""


class LengthNotAdditive(CoxshadowsError):
    """A product decomposition x*y was given with length(xy) < length(x)+length(y)."""


class NotADescent(CoxshadowsError):
    """The generator is not a descent of the element on the requested side."""


class Exceeded(CoxshadowsError):
    """A search hit its configured cap before finishing."""


class RenderUnsupported(CoxshadowsError):
    """Rendering is only implemented for affine rank-2 groups."""
