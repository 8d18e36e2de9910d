"""Command-line interface.

Structured output is line-oriented key/value text with a version header
and is byte-identical across runs and worker counts; timing and other
diagnostics go to stderr only.  Exit codes: 0 success, 1 a verified
property was violated, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from .girth import girth_bfs, girth_from_shifts
from .girth8 import (
    VerificationBudgetError,
    export_girth8_bound_report,
    verify_girth8_bound,
)
from .lifting import (
    AlistParseError,
    GirthReport,
    export_alist,
    export_girth_report,
    export_shift_matrix,
    import_alist,
    import_shift_matrix,
    lift,
)
from .mappings import (
    CensusBudgetError,
    compatible_pairs,
    difference_sequence,
    enumerate_complete_mappings,
    export_census,
    is_complete_mapping,
)
from .zmod import Permutation
from .search import (
    SearchBudgetError,
    girth6_even_L,
    girth6_odd_L_explicit,
    min_lifting_factor,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# minima reproduced exhaustively by the acceptance suite; used by
# `verify min-lift` to flag regressions
REFERENCE_MIN_LIFT = {
    (3, 4, 6): 5,
    (3, 5, 6): 5,
    (3, 6, 6): 7,
    (3, 7, 6): 7,
    (3, 8, 6): 9,
    (4, 9, 6): 10,
}


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _cmd_mappings(args: argparse.Namespace) -> int:
    if args.action == "check":
        try:
            images = tuple(int(tok) for tok in args.images.split(","))
            perm = Permutation(images)
        except ValueError as exc:
            _note(f"error: {exc}")
            return EXIT_USAGE
        if perm.modulus % 2 == 0:
            _note("note: even modulus, no complete mapping exists at this order")
        complete = is_complete_mapping(perm)
        diffs = " ".join(str(int(d)) for d in difference_sequence(perm))
        if args.format == "structured":
            text = (
                "mapping-check 1\n"
                f"images {' '.join(str(v) for v in images)}\n"
                f"complete {'true' if complete else 'false'}\n"
                f"differences {diffs}\n"
            )
        else:
            text = (
                f"images: {args.images}\n"
                f"complete: {'true' if complete else 'false'}\n"
                f"differences mod {perm.modulus}: {diffs}\n"
            )
        _emit(text, args.output)
        return EXIT_OK

    limit = 0 if args.action == "count" else args.limit
    started = time.perf_counter()
    try:
        census = enumerate_complete_mappings(
            args.n, limit=limit, max_nodes=args.budget, workers=args.workers
        )
    except CensusBudgetError as exc:
        _note(f"error: {exc}")
        census = exc.partial
        text = (
            export_census(census)
            if args.format == "structured"
            else f"partial count (budget hit): {census.count}\n"
        )
        _emit(text, args.output)
        return EXIT_BUDGET
    _note(f"census took {time.perf_counter() - started:.3f}s ({census.nodes} nodes)")
    if args.format == "structured":
        text = export_census(census)
    elif args.action == "count":
        text = f"complete mappings of Z/{args.n}: {census.count}\n"
    else:
        lines = [f"complete mappings of Z/{args.n}: {census.count}"]
        lines.extend(" ".join(str(v) for v in m.images) for m in census.samples)
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _cmd_construct(args: argparse.Namespace) -> int:
    try:
        if args.kind == "product":
            matrix = girth6_odd_L_explicit(args.l, args.h)
        elif args.kind == "array":
            matrix = girth6_odd_L_explicit(args.l, 2)
        elif args.kind == "reversal":
            matrix = girth6_odd_L_explicit(args.l, args.l - 1)
        else:  # even-l
            matrix = girth6_even_L(args.l).witness
    except ValueError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    report = girth_bfs(lift(matrix), cap=12)
    _note(f"girth {report.girth} verified by the lifted-graph oracle")
    if args.alist:
        text = export_alist(lift(matrix))
    else:
        text = export_shift_matrix(matrix)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_girth(args: argparse.Namespace) -> int:
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    is_shift = text.startswith("shift-matrix")
    try:
        matrix = import_shift_matrix(text) if is_shift else None
        parity = lift(matrix) if is_shift else import_alist(text)
    except (ValueError, AlistParseError) as exc:
        _note(f"error: {args.input}: {exc}")
        return EXIT_USAGE
    if args.method in ("shifts", "both") and not is_shift:
        _note("error: the shifts method needs a shift-matrix file, not alist")
        return EXIT_USAGE
    if args.cap < 4 or args.cap % 2:
        _note(f"error: --cap must be even and >= 4, got {args.cap}")
        return EXIT_USAGE

    reports: list[GirthReport] = []
    if args.method in ("shifts", "both"):
        reports.append(girth_from_shifts(matrix, cap=args.cap))
    if args.method in ("bfs", "both"):
        reports.append(girth_bfs(parity, cap=args.cap))
    out = "".join(export_girth_report(r) for r in reports)
    if args.method == "both":
        agree = (
            reports[0].girth == reports[1].girth
            and reports[0].shortest_cycle_count == reports[1].shortest_cycle_count
        )
        out += f"agreement {'true' if agree else 'false'}\n"
        if not agree:
            _emit(out, args.output)
            _note("error: the two girth methods disagree")
            return EXIT_VIOLATION
    _emit(out, args.output)
    return EXIT_OK


def _cmd_verify_min_lift(args: argparse.Namespace) -> int:
    lines = [
        "min-lift-report 1",
        f"J {args.j}",
        f"target-girth {args.girth}",
        f"n-max {args.n_max}",
    ]
    mismatch = False
    try:
        for l in range(args.l_min, args.l_max + 1):
            result = min_lifting_factor(
                args.j, l, args.girth, args.n_max, budget=args.budget
            )
            expected = REFERENCE_MIN_LIFT.get((args.j, l, args.girth))
            if expected is None:
                status, shown = "-", "-"
            elif result.min_n == expected:
                status, shown = "ok", str(expected)
            else:
                status, shown = "mismatch", str(expected)
                mismatch = True
            shown_min = "none" if result.min_n is None else str(result.min_n)
            lines.append(f"L {l} min-n {shown_min} expected {shown} {status}")
    except SearchBudgetError as exc:
        _note(f"error: {exc}")
        lines.append("budget-exhausted true")
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_BUDGET
    _emit("\n".join(lines) + "\n", args.output)
    if mismatch:
        _note("error: computed minimum differs from the reference table")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_verify_pairwise(args: argparse.Namespace) -> int:
    census = enumerate_complete_mappings(args.n, workers=args.workers)
    pairs = compatible_pairs(census)
    lines = [
        "pairwise-report 1",
        f"modulus {args.n}",
        f"mappings {census.count}",
        f"compatible-pairs {len(pairs)}",
    ]
    lines.extend(f"pair {i} {j}" for i, j in pairs)
    _emit("\n".join(lines) + "\n", args.output)
    if args.expect_empty and pairs:
        _note(f"error: expected no compatible pairs, found {len(pairs)}")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_verify_bound(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    try:
        report = verify_girth8_bound(
            args.lprime, args.n_max, n_min=args.n_min, workers=args.workers
        )
    except VerificationBudgetError as exc:
        _note(f"error: {exc}")
        _emit(export_girth8_bound_report(exc.partial), args.output)
        return EXIT_BUDGET
    _note(f"sweep took {time.perf_counter() - started:.3f}s")
    _emit(export_girth8_bound_report(report), args.output)
    if report.total_violations:
        _note(f"error: {report.total_violations} bound violations found")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_verify_conjecture(args: argparse.Namespace) -> int:
    bound = 3 * args.lprime - 1
    n_max = args.n_max if args.n_max is not None else bound - 1
    report = verify_girth8_bound(
        args.lprime, n_max, n_min=args.n_min, workers=args.workers
    )
    lines = [
        "girth8-conjecture-report 1",
        f"lprime {args.lprime}",
        f"bound {bound}",
        f"n-min {report.n_min}",
        f"n-max {report.n_max}",
    ]
    for row in report.rows:
        if row.n < bound:
            lines.append(f"N {row.n} valid {row.valid_tables}")
    lines.append(f"below-bound-valid {report.below_bound_valid}")
    _emit("\n".join(lines) + "\n", args.output)
    # the unconstrained bound is unproven: counterexamples are reported,
    # never treated as failures
    if report.below_bound_valid:
        _note(
            f"note: {report.below_bound_valid} valid tables below the bound; "
            "this is evidence against the unconstrained conjecture, not an error"
        )
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, workers: bool = False) -> None:
    parser.add_argument(
        "--format", choices=("human", "structured"), default="human"
    )
    parser.add_argument("--output", help="write the report here instead of stdout")
    if workers:
        parser.add_argument(
            "--workers",
            type=int,
            default=1,
            help="parallel workers; the output does not depend on this",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcgirth",
        description="girth analysis of quasi-cyclic liftings of complete protographs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("mappings", help="complete-mapping census and checks")
    p_map.add_argument("action", choices=("count", "enumerate", "check"))
    p_map.add_argument("--n", type=int, help="modulus")
    p_map.add_argument("--images", help="comma-separated image list for check")
    p_map.add_argument("--limit", type=int, default=None, help="witness cap")
    p_map.add_argument("--budget", type=int, default=None, help="node budget")
    _add_common(p_map, workers=True)
    p_map.set_defaults(func=_cmd_mappings)

    p_con = sub.add_parser("construct", help="explicit girth-6 constructions")
    p_con.add_argument("kind", choices=("product", "reversal", "array", "even-l"))
    p_con.add_argument("--l", type=int, required=True, help="protograph columns")
    p_con.add_argument("--h", type=int, default=None, help="product multiplier")
    p_con.add_argument(
        "--alist", action="store_true", help="emit the lifted matrix as alist"
    )
    _add_common(p_con)
    p_con.set_defaults(func=_cmd_construct)

    p_gir = sub.add_parser("girth", help="girth of a stored matrix")
    p_gir.add_argument("--input", required=True, help="shift-matrix or alist file")
    p_gir.add_argument(
        "--method", choices=("shifts", "bfs", "both"), default="both"
    )
    p_gir.add_argument("--cap", type=int, default=12)
    _add_common(p_gir)
    p_gir.set_defaults(func=_cmd_girth)

    p_ver = sub.add_parser("verify", help="exhaustive verification sweeps")
    ver_sub = p_ver.add_subparsers(dest="target", required=True)

    p_ml = ver_sub.add_parser("min-lift", help="minimal lifting factors by search")
    p_ml.add_argument("--j", type=int, default=3)
    p_ml.add_argument("--girth", type=int, choices=(6, 8), default=6)
    p_ml.add_argument("--l-min", type=int, default=4)
    p_ml.add_argument("--l-max", type=int, default=8)
    p_ml.add_argument("--n-max", type=int, default=24)
    p_ml.add_argument("--budget", type=int, default=None)
    _add_common(p_ml)
    p_ml.set_defaults(func=_cmd_verify_min_lift)

    p_pw = ver_sub.add_parser("pairwise", help="mutually compatible mapping pairs")
    p_pw.add_argument("--n", type=int, required=True)
    p_pw.add_argument("--expect-empty", action="store_true")
    _add_common(p_pw, workers=True)
    p_pw.set_defaults(func=_cmd_verify_pairwise)

    p_gb = ver_sub.add_parser(
        "girth8-bound", help="lifting-factor bound sweep for valid tables"
    )
    p_gb.add_argument("--lprime", type=int, required=True)
    p_gb.add_argument("--n-max", type=int, required=True)
    p_gb.add_argument("--n-min", type=int, default=None)
    _add_common(p_gb, workers=True)
    p_gb.set_defaults(func=_cmd_verify_bound)

    p_gc = ver_sub.add_parser(
        "girth8-conjecture",
        help="report valid tables below the bound regardless of the hypothesis",
    )
    p_gc.add_argument("--lprime", type=int, required=True)
    p_gc.add_argument("--n-max", type=int, default=None)
    p_gc.add_argument("--n-min", type=int, default=None)
    _add_common(p_gc, workers=True)
    p_gc.set_defaults(func=_cmd_verify_conjecture)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "mappings":
        if args.action in ("count", "enumerate") and args.n is None:
            parser.error("mappings count/enumerate requires --n")
        if args.action == "check" and args.images is None:
            parser.error("mappings check requires --images")
        if args.n is not None and args.n < 1:
            parser.error("--n must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
