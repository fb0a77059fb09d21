"""Command-line interface.

Exit codes: 0 success, 1 domain error (anything derived from GogError, plus
bad argument values), 2 usage error (argparse).  Output is deterministic for
fixed inputs, seeds, and cache state: JSON is emitted with sorted keys and
no whitespace, integers print as exact decimal strings, and rationals carry
exact numerator/denominator columns with 12-significant-digit decimals as
presentation only.  Large integers are JSON strings, never numbers.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import counting, enumeration, lattice, meet_census, verify
from .errors import GogError
from .triangles import (
    matrices_to_text,
    parse_asms,
    parse_column_sums,
    parse_triangles,
    triangles_to_text,
)


def _decimal(value: Fraction, sig: int = 12) -> str:
    return f"{float(value):.{sig}g}"


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _int64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if not -(2**63) <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed {text!r} does not fit in 64 bits")
    return value


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def cmd_asm_count(args: argparse.Namespace) -> int:
    if args.method == "formula":
        value = counting.asm_number(args.n)
    else:
        value = counting.asm_number_dp(args.n)
    print(value)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    stream = enumeration.enumerate_triangles_partitioned(args.n, args.workers)
    first = True
    for t in stream:
        if not first:
            sys.stdout.write("\n")
        sys.stdout.write(str(t) + "\n")
        first = False
    return 0


_PARSERS = {
    "triangle": parse_triangles,
    "column-sum": parse_column_sums,
    "asm": parse_asms,
}


def _convert_one(obj, target: str):
    kind = type(obj).__name__
    if target == "triangle":
        return obj if kind == "MonotoneTriangle" else obj.to_triangle()
    t = obj if kind == "MonotoneTriangle" else obj.to_triangle()
    return t.to_column_sum() if target == "column-sum" else t.to_asm()


def cmd_convert(args: argparse.Namespace) -> int:
    objects = _PARSERS[args.source](_read_input(args.input))
    converted = [_convert_one(obj, args.target) for obj in objects]
    if not converted:
        return 0
    if args.target == "triangle":
        sys.stdout.write(triangles_to_text(converted))
    else:
        sys.stdout.write(matrices_to_text(converted))
    return 0


def cmd_meet(args: argparse.Namespace) -> int:
    ts = parse_triangles(_read_input(args.input))
    op = lattice.meet if args.operation == "meet" else lattice.join
    sys.stdout.write(str(op(ts)) + "\n")
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    table = enumeration.load_or_build_census(
        args.n, cache_dir=args.cache_dir, workers=args.workers
    )
    sys.stdout.write(table.to_text())
    return 0


def cmd_pmin(args: argparse.Namespace) -> int:
    if args.method == "ie":
        n_min = meet_census.n_min_exact(args.n, args.r, workers=args.workers)
    else:
        n_min = meet_census.n_min_census(args.n, args.r)
    p_min = Fraction(n_min, counting.asm_number(args.n) ** args.r)
    payload = {
        "n": args.n,
        "r": args.r,
        "n_min": str(n_min),
        "p_min_num": str(p_min.numerator),
        "p_min_den": str(p_min.denominator),
        "p_min_decimal": _decimal(p_min),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for key in sorted(payload):
            print(f"{key}\t{payload[key]}")
    return 0


def cmd_theorem1(args: argparse.Namespace) -> int:
    reports = meet_census.theorem_report(args.n_max, args.r, workers=args.workers)
    print("n\tn_min\tp_min_num\tp_min_den\tp_min_decimal\tratio_num\tratio_den\tratio_decimal")
    for rep in reports:
        ratio = rep.theorem1_ratio
        print(
            f"{rep.n}\t{rep.n_min}\t{rep.p_min.numerator}\t{rep.p_min.denominator}\t"
            f"{_decimal(rep.p_min)}\t{ratio.numerator}\t{ratio.denominator}\t{_decimal(ratio)}"
        )
    return 0


def cmd_theorem2(args: argparse.Namespace) -> int:
    reports = meet_census.theorem_report(args.n_max, args.r, workers=args.workers)
    print("n\tn_min\tmain\tsecond\tE\ttheta_ratio_decimal")
    for rep in reports:
        print(
            f"{rep.n}\t{rep.n_min}\t{rep.main_term}\t{rep.second_term}\t"
            f"{rep.error_term}\t{_decimal(rep.theta_ratio)}"
        )
    return 0


def cmd_classes(args: argparse.Namespace) -> int:
    sizes = meet_census.class_sizes(args.n, args.r)
    print("label\tsize\tbound\tratio_decimal")
    for label, size in sizes.labels():
        if label.startswith("C_<="):
            bound = None
        else:
            bound = meet_census.class_bound(args.n, args.r, int(label[2:]))
        if bound is None or bound == 0:
            print(f"{label}\t{size}\t\t")
        else:
            print(f"{label}\t{size}\t{bound}\t{_decimal(Fraction(size, bound))}")
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    ts = enumeration.sample_uniform(args.n, args.count, args.seed)
    sys.stdout.write(triangles_to_text(ts))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        try:
            checks = verify.SUITES[name](args.n_max)
        except GogError as exc:
            print(f"FAIL {name}: {exc}")
            return 1
        print(f"OK {name} checks={checks}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gog",
        description="Exact combinatorics of the monotone-triangle lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("asm-count", help="exact count of size-n triangles")
    p.add_argument("--n", type=_nonnegative_int, required=True)
    p.add_argument("--method", choices=("formula", "dp"), default="formula")
    p.set_defaults(func=cmd_asm_count)

    p = sub.add_parser("enumerate", help="stream all size-n triangles")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("convert", help="convert between triangle/matrix forms")
    p.add_argument("--from", dest="source", choices=tuple(_PARSERS), required=True)
    p.add_argument("--to", dest="target", choices=tuple(_PARSERS), required=True)
    p.add_argument("--input", help="input path; defaults to stdin")
    p.set_defaults(func=cmd_convert)

    for name in ("meet", "join"):
        p = sub.add_parser(name, help=f"entry-wise {name} of a triangle stream")
        p.add_argument("--input", help="input path; defaults to stdin")
        p.set_defaults(func=cmd_meet, operation=name)

    p = sub.add_parser("census", help="distinguished-row census, cached on disk")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--cache-dir", help=f"cache directory; else ${enumeration.CACHE_ENV}, else .cache/")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("pmin", help="exact trivial-meet count and probability")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--r", type=_positive_int, required=True)
    p.add_argument("--method", choices=("ie", "census"), default="ie")
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_pmin)

    p = sub.add_parser("theorem1", help="ratio p_min*A(n)/r trajectory")
    p.add_argument("--r", type=_positive_int, required=True)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("theorem2", help="second-order decomposition table")
    p.add_argument("--r", type=_positive_int, required=True)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_theorem2)

    p = sub.add_parser("classes", help="trivial-meet class sizes and bounds")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--r", type=_positive_int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("sample", help="exact uniform triangle samples")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--seed", type=_int64, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument(
        "--suite",
        choices=("bijections", "lattice", "lemmas", "census", "theorems", "all"),
        required=True,
    )
    p.add_argument("--n-max", type=_positive_int, default=6)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
