"""Exact counts of r-tuples with trivial meet, and the decomposition reports.

A tuple (t_1, ..., t_r) has trivial meet exactly when every row index is
distinguished in at least one component: necessity because the entry-wise
minimum at (i, i) must reach i, which pins that component's whole row;
sufficiency because entries at column j never drop below j.  Counting
over the positions of distinguished rows therefore reduces the problem to
a double inclusion-exclusion:

    N_min(n, r) = sum over T subset of [n-1] of (-1)^|T| g(T)^r,

where g(T) counts triangles whose distinguished set avoids T.  g itself is
an inclusion-exclusion over the gap products eta_n, folded into an O(|T|^2)
signed recurrence so the outer sum stays cheap.

The census route recomputes g(T) from the exact-set census table, giving an
oracle that shares no code with the gap products.  The join-side count is
obtained by running the same meet-side machinery on a census keyed through
the rank-reversal bijection, which is the in-code form of p_min = p_max.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .counting import asm_number
from .enumeration import (
    ENUM_LIMIT_DEFAULT,
    CensusTable,
    RunHistogram,
    build_census,
    enumerate_triangles,
)
from .errors import LimitExceeded, RowOutOfRange
from .triangles import RowSet, _mask_max_run

IE_LIMIT_DEFAULT = 18


def _rows_of_mask(mask: int) -> tuple[int, ...]:
    rows = []
    i = 1
    while mask:
        if mask & 1:
            rows.append(i)
        mask >>= 1
        i += 1
    return tuple(rows)


def _avoid_from_table(n: int, ts: tuple[int, ...], a: list[int]) -> int:
    # s[j] collects the signed gap products over subsets of ts with maximum
    # ts[j]; splitting on the maximum turns the 2^m subset sum into O(m^2).
    s: list[int] = []
    for j, t in enumerate(ts):
        sj = -a[t]
        for i in range(j):
            sj -= s[i] * a[t - ts[i]]
        s.append(sj)
    g = a[n]
    for j, t in enumerate(ts):
        g += s[j] * a[n - t]
    return g


def avoid_count(n: int, t_set: RowSet | tuple[int, ...] | list[int]) -> int:
    """Triangles of size n with no distinguished row inside t_set (subset of [n-1]).

    >>> avoid_count(3, (1,)), avoid_count(3, (1, 2))
    (5, 4)
    """
    members = t_set.members if isinstance(t_set, RowSet) else tuple(sorted(set(t_set)))
    for i in members:
        if not 1 <= i <= n - 1:
            raise RowOutOfRange(f"row {i} outside [1, {n - 1}]")
    a = [asm_number(i) for i in range(n + 1)]
    return _avoid_from_table(n, members, a)


def _ie_partial(n: int, r: int, lo: int, hi: int) -> int:
    a = [asm_number(i) for i in range(n + 1)]
    total = 0
    for mask in range(lo, hi):
        g = _avoid_from_table(n, _rows_of_mask(mask), a)
        term = g**r
        total += term if mask.bit_count() % 2 == 0 else -term
    return total


def _ie_partial_star(args: tuple[int, int, int, int]) -> int:
    return _ie_partial(*args)


def n_min_exact(
    n: int, r: int, limit: int = IE_LIMIT_DEFAULT, workers: int = 1
) -> int:
    """Number of r-tuples of size-n triangles whose meet is the minimal triangle.

    >>> n_min_exact(2, 2), n_min_exact(3, 2)
    (3, 15)
    """
    if n < 1:
        raise ValueError(f"n_min_exact needs n >= 1, got {n}")
    if r < 1:
        raise ValueError(f"n_min_exact needs r >= 1, got {r}")
    if n > limit:
        raise LimitExceeded(f"inclusion-exclusion limit is {limit}, got n={n}")
    size = 1 << (n - 1)
    if workers <= 1:
        return _ie_partial(n, r, 0, size)
    chunk = -(-size // workers)
    jobs = [(n, r, lo, min(lo + chunk, size)) for lo in range(0, size, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_ie_partial_star, jobs))


def _ie_over_census(census: CensusTable, r: int) -> int:
    n = census.n
    total = 0
    for mask in range(1 << (n - 1)):
        g = census.avoid_count(mask)
        term = g**r
        total += term if mask.bit_count() % 2 == 0 else -term
    return total


def n_min_census(
    n: int, r: int, census: CensusTable | None = None, limit: int = ENUM_LIMIT_DEFAULT
) -> int:
    """Oracle for `n_min_exact`: the same outer sum, with the avoidance counts
    read off the exact-set census instead of the gap products."""
    if r < 1:
        raise ValueError(f"n_min_census needs r >= 1, got {r}")
    if census is None:
        census = build_census(n, limit=limit)
    elif census.n != n:
        raise ValueError(f"census is for n={census.n}, expected {n}")
    return _ie_over_census(census, r)


def reversed_census(n: int, limit: int = ENUM_LIMIT_DEFAULT) -> CensusTable:
    """Census keyed by the distinguished rows of the rank-reversed triangle,
    i.e. by the rows equal to their maximal possible content."""
    counts: dict[int, int] = {}
    for t in enumerate_triangles(n, limit=limit):
        mask = t.rank_reverse().distinguished_rows().mask
        counts[mask] = counts.get(mask, 0) + 1
    return CensusTable(n, dict(sorted(counts.items())))


def p_extreme(n: int, r: int, which: str, workers: int = 1) -> Fraction:
    """Probability that r uniform triangles have trivial meet ("min") or
    trivial join ("max"), as an exact reduced fraction.

    The join side never reuses the meet-side counts: it runs the census
    inclusion-exclusion on rank-reversed keys, so the equality of the two
    exercises the reversal bijection.
    """
    denominator = asm_number(n) ** r
    if which == "min":
        return Fraction(n_min_exact(n, r, workers=workers), denominator)
    if which == "max":
        return Fraction(_ie_over_census(reversed_census(n), r), denominator)
    raise ValueError(f"which must be 'min' or 'max', got {which!r}")


# ---------------------------------------------------------------------------
# Class decomposition


@dataclass
class ClassSizes:
    """Sizes of the overlapping classes of trivial-meet tuples.

    exact_sizes[v] counts tuples in which some component's longest block of
    consecutive distinguished rows has length exactly v, for v from n down
    to max(1, n - 6r).  tail_size counts tuples in which every component
    stays at or below tail_threshold = n - 6r - 1 (zero when that is < 1).
    Membership is non-exclusive; only the union of the classes is a cover.
    """

    n: int
    r: int
    exact_sizes: dict[int, int]
    tail_threshold: int
    tail_size: int

    def labels(self) -> list[tuple[str, int]]:
        rows = [(f"C_{v}", self.exact_sizes[v]) for v in sorted(self.exact_sizes, reverse=True)]
        rows.append((f"C_<={self.tail_threshold}", self.tail_size))
        return rows


def class_bound(n: int, r: int, v: int) -> int | None:
    """The upper bound the counting argument assigns to class C_v, or None
    where no bound is claimed (the tail class is bounded only coarsely)."""
    i = n - v
    if i == 0:
        return r * asm_number(n) ** (r - 1)
    if r == 1:
        return 0  # every class below C_n is empty for a single triangle
    if i == 1:
        return r * (r - 1) * asm_number(n - 1) * asm_number(n) ** (r - 2)
    if 2 <= i <= 6 * r:
        return (
            r
            * (r - 1) ** 2
            * i
            * asm_number(i + 1)
            * asm_number(i)
            * asm_number(n - i + 1)
            * asm_number(n) ** (r - 2)
        )
    return None


def class_sizes(n: int, r: int, limit: int = ENUM_LIMIT_DEFAULT) -> ClassSizes:
    """Exact class sizes, computed over tuples of census keys (the class of a
    tuple depends only on the components' distinguished sets)."""
    if r < 1:
        raise ValueError(f"class_sizes needs r >= 1, got {r}")
    census = build_census(n, limit=limit)
    items = [(mask, count, _mask_max_run(mask)) for mask, count in census.counts.items()]
    full = (1 << n) - 1
    low = max(1, n - 6 * r)
    exact = {v: 0 for v in range(low, n + 1)}
    tail_threshold = n - 6 * r - 1
    tail = 0
    for combo in product(items, repeat=r):
        union = 0
        weight = 1
        for mask, count, _ in combo:
            union |= mask
            weight *= count
        if union != full:
            continue
        runs = {run for _, _, run in combo}
        for v in runs:
            exact[v] += weight
        if max(runs) <= tail_threshold:
            tail += weight
    return ClassSizes(n, r, exact, tail_threshold, tail)


# ---------------------------------------------------------------------------
# Block-structure and theorem reports


@dataclass
class RunHistogramReport:
    """Run histogram plus the two block-count checks from the refinement.

    head_matches: exactly 1, 1, 6 triangles at runs n, n-1, n-2 (holds from
    n = 4 on; at n = 3 the histogram is {3: 1, 2: 1, 1: 5}).
    tail_matches: A(n) - 8 triangles with run <= n-3.
    """

    n: int
    histogram: RunHistogram
    head_matches: bool
    tail_matches: bool


def run_histogram_report(n: int, limit: int = ENUM_LIMIT_DEFAULT) -> RunHistogramReport:
    hist = build_census(n, limit=limit).run_histogram()
    counts = hist.counts
    head = (
        counts.get(n, 0) == 1
        and counts.get(n - 1, 0) == 1
        and counts.get(n - 2, 0) == 6
    )
    tail = hist.at_most(n - 3) == asm_number(n) - 8
    return RunHistogramReport(n, hist, head, tail)


@dataclass
class MeetCensusReport:
    """Exact decomposition N_min = main + second + E for one (n, r).

    main_term   = r A(n)^(r-1)          (tuples containing the minimum)
    second_term = 2r(r-1) A(n-1) A(n)^(r-2)
    error_term  = E, signed; theta_ratio = E / (A(n-2) A(n)^(r-2))
    For r = 1 the decomposition degenerates to main = 1 = n_min, E = 0.
    """

    n: int
    r: int
    n_min: int
    p_min: Fraction
    main_term: int
    second_term: int
    error_term: int
    theta_ratio: Fraction

    @property
    def theorem1_ratio(self) -> Fraction:
        """p_min * A(n) / r, the quantity that tends to 1."""
        return Fraction(self.n_min, self.r * asm_number(self.n) ** (self.r - 1))


def decompose(n: int, r: int, n_min: int) -> MeetCensusReport:
    """Build the report for a precomputed trivial-meet count (n >= 2)."""
    if n < 2:
        raise ValueError(f"the decomposition needs n >= 2, got {n}")
    a = asm_number
    p_min = Fraction(n_min, a(n) ** r)
    if r == 1:
        return MeetCensusReport(n, r, n_min, p_min, 1, 0, n_min - 1, Fraction(0))
    main = r * a(n) ** (r - 1)
    second = 2 * r * (r - 1) * a(n - 1) * a(n) ** (r - 2)
    error = n_min - main - second
    theta = Fraction(error, a(n - 2) * a(n) ** (r - 2))
    return MeetCensusReport(n, r, n_min, p_min, main, second, error, theta)


def theorem_report(
    n_max: int, r: int, limit: int = IE_LIMIT_DEFAULT, workers: int = 1
) -> list[MeetCensusReport]:
    """Decomposition reports for n = 2..n_max at fixed r.

    Rows start at n = 2 because the curvature denominator uses A(n-2).
    Signs of the error term are recorded, never asserted.
    """
    if n_max < 2:
        raise ValueError(f"theorem_report needs n_max >= 2, got {n_max}")
    if n_max > limit:
        raise LimitExceeded(f"inclusion-exclusion limit is {limit}, got n_max={n_max}")
    return [
        decompose(n, r, n_min_exact(n, r, limit=limit, workers=workers))
        for n in range(2, n_max + 1)
    ]
