"""Exception types shared across the package."""


class TdpError(Exception):
    """Base class for all errors raised by this package."""


class CtxMismatch(TdpError):
    """Operands belong to different field contexts."""


class DivisionByZero(TdpError, ZeroDivisionError):
    """Division by, or inversion of, the zero element."""


class RootOfUnity(TdpError):
    """A geometric ratio is an n-th root of unity for some n <= d."""


class UnsupportedDiameter(TdpError):
    """The operation is not defined (or not enabled) at this diameter."""


class NotFeasible(TdpError):
    """The parameter sequence fails the feasibility conditions."""


class ConstraintViolated(TdpError):
    """A construction constraint fails; the message names the constraint."""


class NotDistinct(TdpError):
    """A constructed eigenvalue sequence has repeated entries."""


class IndexOutOfRange(TdpError, IndexError):
    """An index lies outside [0, d]."""


class InconsistentType(TdpError):
    """A word type violates its own parity or index constraints."""


class NotApplicable(TdpError):
    """The quantity is undefined for this word (constant or non-zigzag)."""


class NotZigzagBracketType(TdpError):
    """The word is not a zigzag word of bracket type."""


class DimensionMismatch(TdpError):
    """Dimensions of the operands do not agree."""
