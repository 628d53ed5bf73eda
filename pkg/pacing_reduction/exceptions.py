"""
Exception Hierarchy
Every error raised by the package derives from PacingError and the builtin
it refines, so callers may catch either.
"""


class PacingError(Exception):
    """Base class for all package errors"""


class GameStructureError(PacingError, ValueError):
    """A pacing game violates its structural invariants"""


class DimensionError(PacingError, ValueError):
    """Profile or allocation dimensions do not match the game"""


class IndexOutOfRangeError(PacingError, IndexError):
    """A buyer or good index is outside the game"""


class InvalidProfileError(PacingError, ValueError):
    """A multiplier profile or allocation has out-of-range entries"""


class CircuitStructureError(PacingError, ValueError):
    """A circuit is malformed or breaks the unique-output rule"""


class InstanceTooLargeError(PacingError, ValueError):
    """An instance exceeds an enumeration cap"""


class ReductionParameterError(PacingError, ValueError):
    """Reduction parameters are out of range"""


class UnsupportedGateError(PacingError, ValueError):
    """A gate kind the compiler cannot handle"""


class VariantMismatchError(PacingError, ValueError):
    """An operation was applied to an artifact of the wrong variant"""


class MissingBuyerError(PacingError, LookupError):
    """A multiplier profile does not cover every buyer of an artifact"""


class ImpureAssignmentError(PacingError, ValueError):
    """An assignment contains Bot where a pure one is required"""


class EnumerationLimitError(PacingError, RuntimeError):
    """A grid search would enumerate more profiles than allowed"""


class DocumentError(PacingError, ValueError):
    """A document cannot be parsed or does not match its schema"""
