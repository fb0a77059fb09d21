"""The entry-wise partial order and lattice operations on monotone triangles.

Two triangles of the same size compare entry-wise; the order has a unique
minimum (staircase rows) and maximum.  Meet and join are the entry-wise
minimum and maximum, folded pairwise over the input sequence; the fold order
is irrelevant by associativity (tested, not assumed).
"""

from __future__ import annotations

import enum
from functools import reduce
from typing import Callable, Iterable, Sequence

from .errors import EmptyInput, SizeMismatch
from .triangles import MonotoneTriangle, extremal_triangle


class OrderRelation(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def compare(a: MonotoneTriangle, b: MonotoneTriangle) -> OrderRelation:
    """Four-valued entry-wise comparison.

    >>> t1 = MonotoneTriangle(((3,), (1, 3), (1, 2, 3)))
    >>> t2 = MonotoneTriangle(((2,), (2, 3), (1, 2, 3)))
    >>> compare(t1, t2).value
    'incomparable'
    """
    if a.n != b.n:
        raise SizeMismatch(f"cannot compare sizes {a.n} and {b.n}")
    le = ge = True
    for row_a, row_b in zip(a.rows, b.rows):
        for x, y in zip(row_a, row_b):
            if x < y:
                ge = False
            elif x > y:
                le = False
        if not le and not ge:
            return OrderRelation.INCOMPARABLE
    if le and ge:
        return OrderRelation.EQUAL
    return OrderRelation.LESS if le else OrderRelation.GREATER


def leq(a: MonotoneTriangle, b: MonotoneTriangle) -> bool:
    return compare(a, b) in (OrderRelation.LESS, OrderRelation.EQUAL)


def _checked(ts: Iterable[MonotoneTriangle]) -> Sequence[MonotoneTriangle]:
    ts = tuple(ts)
    if not ts:
        raise EmptyInput("meet/join need at least one triangle")
    n = ts[0].n
    for k, t in enumerate(ts):
        if t.n != n:
            raise SizeMismatch(f"operand {k + 1} has size {t.n}, expected {n}")
    return ts


def _merge(a: MonotoneTriangle, b: MonotoneTriangle, pick: Callable[[int, int], int]) -> MonotoneTriangle:
    rows = tuple(
        tuple(pick(x, y) for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(a.rows, b.rows)
    )
    return MonotoneTriangle(rows)


def meet(ts: Iterable[MonotoneTriangle]) -> MonotoneTriangle:
    """Entry-wise minimum; the greatest lower bound under `compare`."""
    ts = _checked(ts)
    return reduce(lambda a, b: _merge(a, b, min), ts)


def join(ts: Iterable[MonotoneTriangle]) -> MonotoneTriangle:
    """Entry-wise maximum; the least upper bound under `compare`."""
    ts = _checked(ts)
    return reduce(lambda a, b: _merge(a, b, max), ts)


def is_trivial(ts: Iterable[MonotoneTriangle], which: str) -> bool:
    """Whether the meet is the minimal triangle / the join is the maximal one."""
    ts = _checked(ts)
    if which == "meet":
        return meet(ts) == extremal_triangle(ts[0].n, "min")
    if which == "join":
        return join(ts) == extremal_triangle(ts[0].n, "max")
    raise ValueError(f"which must be 'meet' or 'join', got {which!r}")
