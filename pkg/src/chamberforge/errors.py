"""Exception hierarchy.

Every error raised on purpose by the package derives from ``ChamberError``.
``InputError`` subclasses map to CLI exit code 2, ``DegenerateError``
subclasses to exit code 3.
"""


class ChamberError(Exception):
    """Base class for all package errors."""


class InputError(ChamberError, ValueError):
    """Malformed or invalid user input."""


class DegenerateError(ChamberError):
    """Input lies on a wall or has a vanishing subset sum."""


class ZeroVector(InputError):
    pass


class MalformedSystem(InputError):
    pass


class NotComplete(InputError):
    pass


class NonPrimitiveRay(InputError):
    pass


class DuplicateRay(InputError):
    pass


class NotARefinement(InputError):
    pass


class NotACone(InputError):
    pass


class UnknownElement(InputError):
    pass


class TooFewMarks(InputError):
    pass


class InvariantViolation(InputError):
    pass


class UnsupportedConfiguration(InputError):
    pass


class InconsistentMap(InputError):
    pass


class NotEquivalent(InputError):
    pass


class NotRealizable(ChamberError):
    pass


class TransportInfeasible(ChamberError):
    pass


class NegativeRc(ChamberError):
    pass


class DegenerateSubset(DegenerateError):
    pass


class OnWall(DegenerateError):
    pass


class Unbalanced(InputError):
    pass
