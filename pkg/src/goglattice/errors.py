"""Exception hierarchy for goglattice.

Everything the library raises on bad domain input derives from GogError so
the command-line front end can map any of it onto a single exit code.
Triangle validation errors additionally carry the first offending 1-based
position (row, column) in reading order.
"""

from __future__ import annotations


class GogError(Exception):
    """Base class for all domain errors raised by this package."""


class TriangleError(GogError):
    """A candidate triangle violates one of the defining conditions."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


class ShapeMismatch(TriangleError):
    """Row count or row lengths do not form a triangular array."""


class StrictIncreaseViolated(TriangleError):
    """Some row is not strictly increasing."""


class InterlacingViolated(TriangleError):
    """Adjacent rows fail the interlacing bracket a(i,j) <= a(i-1,j) <= a(i,j+1)."""


class BadBottomRow(TriangleError):
    """The bottom row is not exactly 1, 2, ..., n."""


class SizeTooSmall(GogError):
    """The requested construction needs a larger triangle size."""


class NotAColumnSumMatrix(GogError):
    """A 0/1 matrix fails the column-sum matrix conditions."""


class NotAnASM(GogError):
    """A matrix fails the alternating-sign matrix conditions."""


class NotAPermutation(GogError):
    """A value sequence is not a rearrangement of 1..n."""


class SizeMismatch(GogError):
    """Operands of a lattice operation have different sizes."""


class EmptyInput(GogError):
    """A nonempty sequence of triangles was required."""


class RowOutOfRange(GogError):
    """A row index lies outside the admissible range."""


class LimitExceeded(GogError):
    """The requested size exceeds a configured enumeration or DP limit."""


class IndexOutOfRange(GogError):
    """A rank is outside [0, A(n))."""


class FormatError(GogError):
    """A text input does not conform to one of the documented file formats."""


class VerificationFailure(GogError):
    """An invariant suite found a counterexample."""
