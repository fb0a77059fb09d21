"""Exact evaluation of the triangle-count sequence A(n) and its inequalities.

A(n) is the number of monotone triangles of size n,

    A(n) = prod_{k=0}^{n-1} (3k+1)! / (n+k)!,   A(0) = 1.

The product is evaluated as one exact numerator and one exact denominator;
the division must leave no remainder (the individual factorial ratios are
not integers, the full product is).  `asm_number_dp` recomputes the same
value by a row-interlacing dynamic program that never touches the formula,
which is the in-process oracle for it.

All counts are Python ints and all probabilities `fractions.Fraction`;
nothing here rounds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable

from .errors import LimitExceeded, RowOutOfRange
from .triangles import RowSet, interlacing_successors

DP_LIMIT_DEFAULT = 12

_A_CACHE: list[int] = [1]  # A(0); append-only, filled once per process


def _asm_number_formula(n: int) -> int:
    num = 1
    den = 1
    for k in range(n):
        num *= math.factorial(3 * k + 1)
        den *= math.factorial(n + k)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"A({n}) product formula did not divide exactly")
    return q


def asm_number(n: int) -> int:
    """The exact number of monotone triangles of size n (A(0) = 1).

    >>> [asm_number(n) for n in range(6)]
    [1, 1, 2, 7, 42, 429]
    """
    if n < 0:
        raise ValueError(f"asm_number needs n >= 0, got {n}")
    while len(_A_CACHE) <= n:
        _A_CACHE.append(_asm_number_formula(len(_A_CACHE)))
    return _A_CACHE[n]


def asm_number_dp(n: int, limit: int = DP_LIMIT_DEFAULT) -> int:
    """Count triangles by building rows top-down; independent of the formula."""
    if n < 1:
        raise ValueError(f"asm_number_dp needs n >= 1, got {n}")
    if n > limit:
        raise LimitExceeded(f"asm_number_dp limit is {limit}, got n={n}")
    counts: dict[tuple[int, ...], int] = {(): 1}
    for _ in range(n):
        nxt: dict[tuple[int, ...], int] = {}
        for row, c in counts.items():
            for succ in interlacing_successors(row, n):
                nxt[succ] = nxt.get(succ, 0) + c
        counts = nxt
    return counts[tuple(range(1, n + 1))]


def _sorted_members(n: int, rows: RowSet | Iterable[int]) -> tuple[int, ...]:
    members = rows.members if isinstance(rows, RowSet) else tuple(sorted(set(rows)))
    for i in members:
        if not 1 <= i <= n - 1:
            raise RowOutOfRange(f"row {i} outside [1, {n - 1}]")
    return members


def eta(n: int, rows: RowSet | Iterable[int]) -> int:
    """Triangles whose distinguished set contains `rows` plus the bottom row.

    For sorted members i1 < ... < ik this is the gap product
    A(i1) A(i2-i1) ... A(ik-i_{k-1}) A(n-ik); eta(n, ()) is A(n).

    >>> eta(3, (1,)), eta(4, (1, 3))
    (2, 2)
    """
    members = _sorted_members(n, rows)
    prod = 1
    prev = 0
    for i in members:
        prod *= asm_number(i - prev)
        prev = i
    return prod * asm_number(n - prev)


# ---------------------------------------------------------------------------
# Lemma-level inequalities, in exact integer form


@dataclass
class LemmaMargins:
    """Exact margins for the three count inequalities used by the bounds.

    increase:  (i1, i2, A(i1+1)A(i2-1) - A(i1)A(i2)) for 1 <= i2 <= i1 <= n_max
    ratio:     (n, c, lhs, rhs) with lhs = A(n-c) * 3^(c(2n-c-1)/2) and
               rhs = A(n) * 2^(c(2n-c-1)/2); the claim is lhs <= rhs
    corollary: (n, members, A(n-k) - eta_n(members)) over sampled subsets
    """

    n_max: int
    increase: list[tuple[int, int, int]] = field(default_factory=list)
    ratio: list[tuple[int, int, int, int]] = field(default_factory=list)
    corollary: list[tuple[int, tuple[int, ...], int]] = field(default_factory=list)

    def violations(self) -> list[str]:
        bad = [
            f"increase margin < 0 at (i1={i1}, i2={i2}): {m}"
            for i1, i2, m in self.increase
            if m < 0
        ]
        bad += [
            f"ratio bound fails at (n={n}, c={c}): {lhs} > {rhs}"
            for n, c, lhs, rhs in self.ratio
            if lhs > rhs
        ]
        bad += [
            f"corollary margin < 0 at (n={n}, I={members}): {m}"
            for n, members, m in self.corollary
            if m < 0
        ]
        return bad

    @property
    def ok(self) -> bool:
        return not self.violations()

    @property
    def checks(self) -> int:
        return len(self.increase) + len(self.ratio) + len(self.corollary)


def lemma_margins(n_max: int, subset_limit: int = 64, seed: int = 20240817) -> LemmaMargins:
    """Sweep the lemma inequalities up to n_max; exact integers throughout.

    The ratio bound is checked in cross-multiplied form, avoiding any
    floating-point tolerance.  Subsets for the corollary margin are
    exhaustive while 2^(n-1) <= subset_limit and seeded samples beyond,
    always including the prefix sets {1..k} (which attain equality).
    """
    if n_max < 2:
        raise ValueError(f"lemma_margins needs n_max >= 2, got {n_max}")
    report = LemmaMargins(n_max)
    for i1 in range(1, n_max + 1):
        for i2 in range(1, i1 + 1):
            margin = asm_number(i1 + 1) * asm_number(i2 - 1) - asm_number(i1) * asm_number(i2)
            report.increase.append((i1, i2, margin))
    for n in range(1, n_max + 1):
        for c in range(1, n + 1):
            e = c * (2 * n - c - 1) // 2
            lhs = asm_number(n - c) * 3**e
            rhs = asm_number(n) * 2**e
            report.ratio.append((n, c, lhs, rhs))
    rng = random.Random(seed)
    for n in range(2, n_max + 1):
        if 2 ** (n - 1) - 1 <= subset_limit:
            masks: set[int] = set(range(1, 2 ** (n - 1)))
        else:
            masks = {2**k - 1 for k in range(1, n)}  # prefix sets {1..k}
            while len(masks) < subset_limit:
                masks.add(rng.randrange(1, 2 ** (n - 1)))
        for mask in sorted(masks):
            members = tuple(i for i in range(1, n) if mask >> (i - 1) & 1)
            margin = asm_number(n - len(members)) - eta(n, members)
            report.corollary.append((n, members, margin))
    return report


def bleher_fokin_estimate(n: int) -> float:
    """Numeric diagnostic: exp(log A(n) - n^2 log(3*sqrt(3)/4) + (5/36) log n).

    Tracks the unknown constant in the asymptotic growth of A(n); recorded
    as a trajectory, never asserted against a limit value.
    """
    if n < 2:
        raise ValueError(f"bleher_fokin_estimate needs n >= 2, got {n}")
    log_a = math.log(asm_number(n))
    return math.exp(log_a - n * n * math.log(3 * math.sqrt(3) / 4) + (5 / 36) * math.log(n))
