"""Exact combinatorics of the monotone-triangle lattice.

Monotone triangles (strictly increasing rows, interlacing adjacent rows,
bottom row 1..n) form a lattice under entry-wise comparison and are in
bijection with alternating-sign matrices.  This package provides the
validated domain objects and bijections, exact arbitrary-precision counting
of the lattice and of its distinguished-row structure, exhaustive
enumeration with ranking and exact uniform sampling, and the
inclusion-exclusion census of r-tuples with trivial meet or join, together
with the second-order decomposition of that count.

Everything is exact: counts are Python ints, probabilities are
`fractions.Fraction`, and decimals only ever appear as presentation.
"""

from .counting import (
    LemmaMargins,
    asm_number,
    asm_number_dp,
    bleher_fokin_estimate,
    eta,
    lemma_margins,
)
from .enumeration import (
    CensusTable,
    RunHistogram,
    TrianglePrefix,
    build_census,
    completions_count,
    enumerate_triangles,
    load_or_build_census,
    rank,
    resolve_cache_dir,
    sample_uniform,
    unrank,
)
from .errors import (
    BadBottomRow,
    EmptyInput,
    FormatError,
    GogError,
    IndexOutOfRange,
    InterlacingViolated,
    LimitExceeded,
    NotAColumnSumMatrix,
    NotAnASM,
    NotAPermutation,
    RowOutOfRange,
    ShapeMismatch,
    SizeMismatch,
    SizeTooSmall,
    StrictIncreaseViolated,
    TriangleError,
    VerificationFailure,
)
from .lattice import OrderRelation, compare, is_trivial, join, meet
from .meet_census import (
    ClassSizes,
    MeetCensusReport,
    RunHistogramReport,
    avoid_count,
    class_bound,
    class_sizes,
    decompose,
    n_min_census,
    n_min_exact,
    p_extreme,
    reversed_census,
    run_histogram_report,
    theorem_report,
)
from .triangles import (
    AlternatingSignMatrix,
    ColumnSumMatrix,
    MonotoneTriangle,
    Permutation,
    RowSet,
    extremal_triangle,
    interlacing_successors,
    max_consecutive_run,
    near_minimal_triangle,
    parse_asms,
    parse_column_sums,
    parse_triangles,
    perm_to_triangle,
    triangle_to_text,
    triangles_to_text,
    validate_triangle,
)

__version__ = "0.1.0"
