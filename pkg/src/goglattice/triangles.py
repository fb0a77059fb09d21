"""Monotone triangles, their companion matrix forms, and the maps between them.

A monotone triangle of size n is a triangular array with i entries in row i,
all taken from [n] = {1, ..., n}, whose rows strictly increase, whose
adjacent rows interlace (a(i,j) <= a(i-1,j) <= a(i,j+1)), and whose bottom
row is therefore forced to be 1, 2, ..., n.  The same data can be presented
as an n x n column-sum matrix (0/1 entries; row i is the indicator vector of
triangle row i) or as an alternating-sign matrix (successive differences of
the column-sum rows).

All public interfaces and error positions are 1-based, matching the usual
a(i,j) indexing; storage is 0-based tuples.  Values are immutable after
construction and every constructor validates eagerly.

>>> t = MonotoneTriangle(((3,), (2, 4), (1, 3, 4), (1, 2, 3, 4)))
>>> t.to_asm().entries[1]
(0, 1, -1, 1)
>>> MonotoneTriangle.from_asm(t.to_asm()) == t
True
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadBottomRow,
    FormatError,
    InterlacingViolated,
    NotAColumnSumMatrix,
    NotAnASM,
    NotAPermutation,
    RowOutOfRange,
    ShapeMismatch,
    SizeTooSmall,
    StrictIncreaseViolated,
    TriangleError,
)

Rows = tuple[tuple[int, ...], ...]


def _staircase(i: int) -> tuple[int, ...]:
    return tuple(range(1, i + 1))


def _validate_rows(rows: Rows) -> None:
    """Raise the first violation in reading order (top to bottom, left to right).

    At each anchor (i, j) the strict-increase pair (j, j+1) is checked before
    the interlacing bracket at the same anchor; the bottom-row check runs last.
    """
    n = len(rows)
    if n == 0:
        raise ShapeMismatch("a monotone triangle needs at least one row")
    for i, row in enumerate(rows, start=1):
        if len(row) != i:
            raise ShapeMismatch(
                f"row {i} has {len(row)} entries, expected {i}", position=(i, 1)
            )
        for j, entry in enumerate(row, start=1):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise ShapeMismatch(
                    f"entry at ({i}, {j}) is not an integer: {entry!r}",
                    position=(i, j),
                )
    for i in range(2, n + 1):
        above = rows[i - 2]
        row = rows[i - 1]
        for j in range(1, i):
            if not row[j - 1] < row[j]:
                raise StrictIncreaseViolated(
                    f"row {i} is not strictly increasing at ({i}, {j}): "
                    f"{row[j - 1]} >= {row[j]}",
                    position=(i, j),
                )
            if not row[j - 1] <= above[j - 1] <= row[j]:
                raise InterlacingViolated(
                    f"rows {i - 1} and {i} fail interlacing at ({i}, {j}): "
                    f"need {row[j - 1]} <= {above[j - 1]} <= {row[j]}",
                    position=(i, j),
                )
    bottom = rows[n - 1]
    for j in range(1, n + 1):
        if bottom[j - 1] != j:
            raise BadBottomRow(
                f"bottom row entry at ({n}, {j}) is {bottom[j - 1]}, expected {j}",
                position=(n, j),
            )


@dataclass(frozen=True)
class MonotoneTriangle:
    """An immutable, validated monotone triangle.

    `rows[i-1]` is row i as a strictly increasing tuple of i integers.
    Equality and hashing are structural.
    """

    rows: Rows

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.rows)
        _validate_rows(rows)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """The j-th entry of row i, both 1-based."""
        return self.rows[i - 1][j - 1]

    def reading_sequence(self) -> tuple[int, ...]:
        """All entries, top to bottom and left to right."""
        return tuple(chain.from_iterable(self.rows))

    def distinguished_rows(self) -> "RowSet":
        """Rows equal to the smallest possible content 1, 2, ..., i.

        The bottom row is always a member.

        >>> t = MonotoneTriangle(((1,), (1, 2), (1, 2, 4), (1, 2, 3, 4)))
        >>> t.distinguished_rows().members
        (1, 2, 4)
        """
        mask = 0
        for i, row in enumerate(self.rows, start=1):
            if row == _staircase(i):
                mask |= 1 << (i - 1)
        return RowSet(self.n, mask)

    def is_permutation_triangle(self) -> bool:
        """True iff each row is a subset of the next row."""
        for upper, lower in zip(self.rows, self.rows[1:]):
            if not set(upper) <= set(lower):
                return False
        return True

    def rank_reverse(self) -> "MonotoneTriangle":
        """Apply k -> n-k+1 to every entry and reverse each row.

        This is an involution exchanging the minimal and maximal triangles.
        """
        n = self.n
        rows = tuple(tuple(n - e + 1 for e in reversed(row)) for row in self.rows)
        return MonotoneTriangle(rows)

    def to_column_sum(self) -> "ColumnSumMatrix":
        """The 0/1 matrix whose row i is the indicator vector of row i."""
        n = self.n
        entries = []
        for row in self.rows:
            present = set(row)
            entries.append(tuple(1 if v in present else 0 for v in range(1, n + 1)))
        return ColumnSumMatrix(tuple(entries))

    def to_asm(self) -> "AlternatingSignMatrix":
        """Successive row differences of the column-sum matrix."""
        return self.to_column_sum().to_asm()

    @classmethod
    def from_column_sum(cls, c: "ColumnSumMatrix") -> "MonotoneTriangle":
        """Row i lists the positions of the ones in matrix row i, ascending."""
        rows = tuple(
            tuple(j for j, v in enumerate(row, start=1) if v == 1)
            for row in c.entries
        )
        return cls(rows)

    @classmethod
    def from_asm(cls, a: "AlternatingSignMatrix") -> "MonotoneTriangle":
        return cls.from_column_sum(a.to_column_sum())

    @classmethod
    def from_permutation(cls, p: "Permutation") -> "MonotoneTriangle":
        """Row i is the sorted set {p(1), ..., p(i)}.

        >>> MonotoneTriangle.from_permutation(Permutation((3, 1, 2))).rows
        ((3,), (1, 3), (1, 2, 3))
        """
        values = p.values
        rows = tuple(tuple(sorted(values[:i])) for i in range(1, p.n + 1))
        return cls(rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.rows)


def validate_triangle(n: int, rows: Sequence[Sequence[int]]) -> MonotoneTriangle:
    """Validate a ragged array as a monotone triangle of size n."""
    if len(rows) != n:
        raise ShapeMismatch(f"expected {n} rows, got {len(rows)}", position=(1, 1))
    return MonotoneTriangle(tuple(tuple(row) for row in rows))


def extremal_triangle(n: int, which: str) -> MonotoneTriangle:
    """The unique minimal ("min", a(i,j) = j) or maximal ("max",
    a(i,j) = n-i+j) element of the size-n lattice."""
    if n < 1:
        raise SizeTooSmall(f"no monotone triangles of size {n}")
    if which == "min":
        rows = tuple(_staircase(i) for i in range(1, n + 1))
    elif which == "max":
        rows = tuple(
            tuple(n - i + j for j in range(1, i + 1)) for i in range(1, n + 1)
        )
    else:
        raise ValueError(f"which must be 'min' or 'max', got {which!r}")
    return MonotoneTriangle(rows)


def near_minimal_triangle(n: int, which: str) -> MonotoneTriangle:
    """The two closest-to-minimal triangles used by the second-order analysis.

    "top" replaces the top row of the minimal triangle by (2,); "penult"
    replaces row n-1 by (1, 2, ..., n-2, n).  Both need n >= 2.
    """
    if which not in ("top", "penult"):
        raise ValueError(f"which must be 'top' or 'penult', got {which!r}")
    if n < 2:
        raise SizeTooSmall(f"near-minimal triangles need n >= 2, got {n}")
    rows = [list(_staircase(i)) for i in range(1, n + 1)]
    if which == "top":
        rows[0] = [2]
    else:
        rows[n - 2] = list(range(1, n - 1)) + [n]
    return MonotoneTriangle(tuple(tuple(row) for row in rows))


# ---------------------------------------------------------------------------
# Row sets


def _mask_max_run(mask: int) -> int:
    best = run = 0
    while mask:
        if mask & 1:
            run += 1
            if run > best:
                best = run
        else:
            run = 0
        mask >>= 1
    return best


@dataclass(frozen=True)
class RowSet:
    """A subset of row indices [n], stored as a bitmask with bit i-1 for row i."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise RowOutOfRange(f"row-set universe must be positive, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise RowOutOfRange(
                f"mask {self.mask:#x} has bits outside [1, {self.n}]"
            )

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "RowSet":
        mask = 0
        for i in members:
            if not 1 <= i <= n:
                raise RowOutOfRange(f"row {i} outside [1, {n}]")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.mask >> (i - 1) & 1)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def max_consecutive_run(self) -> int:
        """Length of the longest block of consecutive members; 0 if empty.

        >>> RowSet.from_members(4, (1, 2, 4)).max_consecutive_run()
        2
        """
        return _mask_max_run(self.mask)


def max_consecutive_run(d: RowSet) -> int:
    """Largest L with {i, ..., i+L-1} contained in d for some i."""
    return d.max_consecutive_run()


# ---------------------------------------------------------------------------
# Matrix forms


@dataclass(frozen=True)
class ColumnSumMatrix:
    """An n x n 0/1 matrix whose row i marks the entries of triangle row i."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if n == 0:
            raise NotAColumnSumMatrix("matrix is empty")
        for i, row in enumerate(entries, start=1):
            if len(row) != n:
                raise NotAColumnSumMatrix(f"row {i} has {len(row)} entries, expected {n}")
            if any(v not in (0, 1) for v in row):
                raise NotAColumnSumMatrix(f"row {i} has an entry outside {{0, 1}}")
            if sum(row) != i:
                raise NotAColumnSumMatrix(f"row {i} has {sum(row)} ones, expected {i}")
        rows = tuple(
            tuple(j for j, v in enumerate(row, start=1) if v == 1) for row in entries
        )
        try:
            _validate_rows(rows)
        except TriangleError as exc:
            raise NotAColumnSumMatrix(
                f"one-positions do not interlace: {exc}"
            ) from exc

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_triangle(self) -> MonotoneTriangle:
        return MonotoneTriangle.from_column_sum(self)

    def to_asm(self) -> "AlternatingSignMatrix":
        n = self.n
        out = [self.entries[0]]
        for prev, row in zip(self.entries, self.entries[1:]):
            out.append(tuple(b - a for a, b in zip(prev, row)))
        return AlternatingSignMatrix(tuple(out))


def _check_alternating(line: Sequence[int], what: str, index: int) -> None:
    nonzero = [v for v in line if v != 0]
    if not nonzero or nonzero[0] != 1 or nonzero[-1] != 1:
        raise NotAnASM(f"{what} {index} must start and end with +1 among nonzeros")
    for a, b in zip(nonzero, nonzero[1:]):
        if a == b:
            raise NotAnASM(f"{what} {index} has two consecutive nonzeros of sign {a}")


@dataclass(frozen=True)
class AlternatingSignMatrix:
    """An n x n matrix over {-1, 0, 1}: each row and column sums to 1 with
    the nonzero entries alternating in sign."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if n == 0:
            raise NotAnASM("matrix is empty")
        for i, row in enumerate(entries, start=1):
            if len(row) != n:
                raise NotAnASM(f"row {i} has {len(row)} entries, expected {n}")
            if any(v not in (-1, 0, 1) for v in row):
                raise NotAnASM(f"row {i} has an entry outside {{-1, 0, 1}}")
            _check_alternating(row, "row", i)
        for j in range(n):
            _check_alternating([row[j] for row in entries], "column", j + 1)

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_column_sum(self) -> ColumnSumMatrix:
        """Partial sums down each column; valid ASMs always give 0/1 entries."""
        total = [0] * self.n
        out = []
        for row in self.entries:
            total = [a + b for a, b in zip(total, row)]
            out.append(tuple(total))
        return ColumnSumMatrix(tuple(out))

    def to_triangle(self) -> MonotoneTriangle:
        return MonotoneTriangle.from_asm(self)

    def has_negative_entry(self) -> bool:
        return any(-1 in row for row in self.entries)


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation, 1-based values."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise NotAPermutation(f"{values} is not a rearrangement of 1..{len(values)}")

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def to_asm(self) -> AlternatingSignMatrix:
        """The permutation matrix, which is an ASM with no -1 entries."""
        n = self.n
        entries = tuple(
            tuple(1 if self.values[i] == j else 0 for j in range(1, n + 1))
            for i in range(n)
        )
        return AlternatingSignMatrix(entries)

    def to_triangle(self) -> MonotoneTriangle:
        return MonotoneTriangle.from_permutation(self)


def perm_to_triangle(p: Permutation) -> MonotoneTriangle:
    """Row i of the result is the sorted prefix set {p(1), ..., p(i)}."""
    return MonotoneTriangle.from_permutation(p)


# ---------------------------------------------------------------------------
# Row-by-row construction


def interlacing_successors(row: tuple[int, ...], n: int) -> Iterator[tuple[int, ...]]:
    """Yield the strictly increasing rows of length len(row)+1 that can sit
    directly below `row` in a size-n triangle, in lexicographic order.

    The empty row yields (1,), (2,), ..., (n,).  Every strictly increasing
    row admits at least one successor (insert any missing value), which is
    what makes the last fixed row a sufficient DP state.
    """
    i = len(row)
    out = [0] * (i + 1)

    def fill(j: int, lo: int) -> Iterator[tuple[int, ...]]:
        hi = row[j] if j < i else n
        for v in range(lo, hi + 1):
            out[j] = v
            if j == i:
                yield tuple(out)
            else:
                yield from fill(j + 1, max(v + 1, row[j]))

    return fill(0, 1)


# ---------------------------------------------------------------------------
# Text formats (bit-exact CLI interchange)
#
# Triangle format: n lines, line i holding i space-separated integers;
# triangles separated by a single blank line.  Matrix format: n lines of n
# space-separated integers, same separator convention for streams.


def triangle_to_text(t: MonotoneTriangle) -> str:
    return str(t) + "\n"


def triangles_to_text(ts: Iterable[MonotoneTriangle]) -> str:
    return "\n\n".join(str(t) for t in ts) + "\n"


def matrix_to_text(m: ColumnSumMatrix | AlternatingSignMatrix) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in m.entries) + "\n"


def matrices_to_text(ms: Iterable[ColumnSumMatrix | AlternatingSignMatrix]) -> str:
    return "\n\n".join(
        "\n".join(" ".join(str(v) for v in row) for row in m.entries) for m in ms
    ) + "\n"


def _blocks(text: str) -> list[list[str]]:
    blocks: list[list[str]] = []
    current: list[str] = []
    for line in text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return blocks


def _parse_int_lines(lines: list[str]) -> list[list[int]]:
    rows = []
    for line in lines:
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise FormatError(f"non-integer token in line {line!r}") from exc
    return rows


def parse_triangles(text: str) -> list[MonotoneTriangle]:
    """Parse a stream of triangles in the text format."""
    out = []
    for lines in _blocks(text):
        rows = _parse_int_lines(lines)
        out.append(validate_triangle(len(rows), rows))
    return out


def parse_column_sums(text: str) -> list[ColumnSumMatrix]:
    return [
        ColumnSumMatrix(tuple(tuple(r) for r in _parse_int_lines(lines)))
        for lines in _blocks(text)
    ]


def parse_asms(text: str) -> list[AlternatingSignMatrix]:
    return [
        AlternatingSignMatrix(tuple(tuple(r) for r in _parse_int_lines(lines)))
        for lines in _blocks(text)
    ]
