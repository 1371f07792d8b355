"""Exception hierarchy shared by all modules.

Every domain error subclasses FfsdError, which itself subclasses ValueError,
so callers can catch either. The CLI maps FfsdError (and I/O parse errors)
to exit code 2.
"""


class FfsdError(ValueError):
    """Base class for all domain errors raised by this package."""


class OutOfDomainError(FfsdError):
    """A query point lies outside the interval or rectangle it must be in."""


class SampleOutOfRangeError(FfsdError):
    """An empirical sample lies outside the half-open support (a, b]."""


class EmptySampleError(FfsdError):
    """An empirical CDF was requested from an empty sample list."""


class ToleranceTooLargeError(FfsdError):
    """A tolerance at or above the 1/2 well-definedness threshold was used
    where a unique reference point is required."""


class UniquenessViolationError(FfsdError):
    """Internal invariant failure: two distinct feasible reference points
    were found below the 1/2 threshold. Signals a sup-distance bug."""


class IntervalMismatchError(FfsdError):
    """Two objects that must share an interval do not."""


class DimensionMismatchError(FfsdError):
    """Vector operands have different lengths."""


class IndexOutOfRangeError(FfsdError):
    """A coordinate index set refers to a dimension that does not exist."""


class DimensionCapError(FfsdError):
    """The 2^n subset enumeration would exceed the configured dimension cap."""


class CandidateSetEmptyError(FfsdError):
    """A dominance check over reference candidates received none."""


class CandidateCapError(FfsdError):
    """The candidate grid would exceed the configured size cap."""


class BadToleranceOrderError(FfsdError):
    """Equivalence-theorem tolerances must satisfy eps2 < eps1."""


class DegenerateInputError(FfsdError):
    """Two points that must be distinct coincide."""
