"""Command-line interface.

Exit codes: 0 success (CC-able / no violations), 1 well-formed but
infeasible or violations found, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import Mode, OutcomeKind, PatchSpec, PatchValidationError, classify
from .general_solver import solve_general
from .io_formats import (
    PatchInputError,
    parse_patch_input,
    write_mesh_obj,
    write_report,
    write_scan_report,
    write_svg_preview,
)
from .oracle import BudgetExceeded, OracleBudget, brute_force_solutions
from .quadrangulator import build_topology, embed_geometry, synthesize_boundary
from .scan import CHECKS, DEFAULT_CAP, ScanCapExceeded, ScanRange, scan_range
from .solver import MAX_CLOSED_FORM_N, solve

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_tuple(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok != "")
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _load(args):
    """Resolve (spec, mode, boundary, pick, smooth) from flags and input file."""
    boundary = pick = smooth = None
    mode = None
    if args.input is not None:
        try:
            doc = parse_patch_input(Path(args.input).read_text())
        except OSError as exc:
            raise UsageError(str(exc)) from None
        spec, mode, boundary, pick, smooth = doc.spec, doc.mode, doc.boundary, doc.pick, doc.smooth
    else:
        spec = PatchSpec(_int_tuple(args.edges, "--edges"))
    if getattr(args, "non_strict", False):
        mode = Mode.NONSTRICT
    elif args.mode is not None:
        mode = Mode.parse(args.mode)
    return spec, mode or Mode.STRICT, boundary, pick, smooth


def _solve(spec, mode):
    if spec.n <= MAX_CLOSED_FORM_N:
        return solve(spec, mode)
    return solve_general(spec, mode)


def _out(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def cmd_check(args) -> int:
    spec, mode, *_ = _load(args)
    outcome = _solve(spec, mode)
    _out(write_report(outcome, args.format, limit=args.limit))
    return EXIT_OK if outcome.feasible else EXIT_NO


def cmd_enumerate(args) -> int:
    spec, mode, *_ = _load(args)
    outcome = _solve(spec, mode)
    rows = []
    for s, k in zip(outcome.iter_solutions(), outcome.iter_picks()):
        if args.limit is not None and len(rows) >= args.limit:
            break
        rows.append((s, k))
    if args.format == "json":
        import json

        doc = {
            "edges": list(spec.edges),
            "mode": mode.value,
            "count": outcome.count(),
            "solutions": [
                {"s": list(s), "pick": None if k is None else list(k), "singularity": classify(s).to_dict()}
                for s, k in rows
            ],
        }
        _out((json.dumps(doc, sort_keys=True, indent=2) + "\n").encode())
    else:
        lines = [f"{outcome.count()} solution(s) for edges={spec} mode={mode.value}"]
        for s, k in rows:
            tag = "" if k is None else f"k=({k[0]},{k[1]}) "
            lines.append(f"{tag}s=({','.join(map(str, s))})  {classify(s)}")
        _out(("\n".join(lines) + "\n").encode())
    return EXIT_OK if rows else EXIT_NO


def cmd_mesh(args) -> int:
    spec, mode, boundary, pick, smooth = _load(args)
    if args.pick is not None:
        pick = _int_tuple(args.pick, "--pick")
        if len(pick) != 2:
            raise UsageError("--pick takes two integers k0,k1")
    if args.smooth is not None:
        smooth = args.smooth
    outcome = _solve(spec, mode)
    if not outcome.feasible:
        sys.stderr.write("patch is not CC-able:\n")
        for r in outcome.reasons:
            sys.stderr.write(f"  {r.kind}: {r.describe()}\n")
        return EXIT_NO
    if outcome.kind is OutcomeKind.UNIQUE:
        if pick is not None:
            raise UsageError("--pick only applies to patches with a family of solutions")
        s = outcome.solution
    else:
        if pick is None:
            pick = next(outcome.iter_picks())
        k0, k1 = pick
        if k0 not in outcome.params[0] or k1 not in outcome.params[1]:
            raise UsageError(
                f"pick ({k0},{k1}) out of range; valid: k0 in {list(outcome.params[0].inclusive())}, "
                f"k1 in {list(outcome.params[1].inclusive())} (inclusive)"
            )
        s = outcome.member(k0, k1)
    mesh = build_topology(spec, s)
    if boundary is None:
        boundary = synthesize_boundary(spec)
    mesh = embed_geometry(mesh, boundary, smooth or 0)
    if args.out is not None:
        write_mesh_obj(mesh, args.out)
    else:
        _out(write_mesh_obj(mesh))
    if args.svg is not None:
        write_svg_preview(mesh, args.svg)
    return EXIT_OK


def cmd_scan(args) -> int:
    checks = []
    for v in args.verify or []:
        checks.extend(c for c in v.split(",") if c)
    bad = sorted(set(checks) - set(CHECKS))
    if bad:
        raise UsageError(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)}")
    mode = Mode.NONSTRICT if args.non_strict else Mode.parse(args.mode or "strict")
    try:
        rng = ScanRange(args.n, args.min, args.max, mode, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if "feasibility" in checks and (args.n != 8 or mode is not Mode.STRICT or args.min < 2):
        raise UsageError("feasibility needs --n 8, strict mode and --min >= 2")
    if "uniqueness" in checks and args.n % 4 == 0:
        raise UsageError("uniqueness is only claimed when n is not a multiple of 4")
    report = scan_range(rng, checks, workers=args.jobs)
    _out(write_scan_report(report, args.format))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_oracle(args) -> int:
    spec, mode, *_ = _load(args)
    if spec.n < 2:
        raise UsageError("a patch needs at least 2 sides")
    try:
        sols = sorted(brute_force_solutions(spec, mode, OracleBudget(args.budget)))
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    lines = [f"{len(sols)} solution(s) for edges={spec} mode={mode.value}"]
    lines += [f"s=({','.join(map(str, s))})" for s in sols]
    _out(("\n".join(lines) + "\n").encode())
    return EXIT_OK if sols else EXIT_NO


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--edges", help="comma-separated edge counts, side 0 first")
    src.add_argument("--input", help="JSON patch document")
    p.add_argument("--mode", choices=["strict", "nonstrict"], default=None)
    p.add_argument("--non-strict", action="store_true", help="shorthand for --mode nonstrict")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccquad", description="Single-singularity quadrangulation of n-sided patches."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide CC-ability and print the outcome")
    _add_input(p)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--limit", type=int, default=1000, help="max solutions listed")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list every solution with its singularity placement")
    _add_input(p)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mesh", help="write the quad mesh as OBJ (and optionally SVG)")
    _add_input(p)
    p.add_argument("--pick", help="family member k0,k1")
    p.add_argument("--smooth", type=int, default=None, help="smoothing iterations")
    p.add_argument("--out", help="OBJ path (stdout if omitted)")
    p.add_argument("--svg", help="SVG preview path")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("scan", help="verify claims over a box of edge vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min", type=int, default=2)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--mode", choices=["strict", "nonstrict"], default=None)
    p.add_argument("--non-strict", action="store_true")
    p.add_argument("--verify", action="append", help=f"one of {', '.join(CHECKS)} (repeatable)")
    p.add_argument("--jobs", "--workers", dest="jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="brute-force solutions, for cross-checking")
    _add_input(p)
    p.add_argument("--budget", type=int, default=OracleBudget().max_candidates)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PatchValidationError, PatchInputError, ScanCapExceeded, ValueError) as exc:
        sys.stderr.write(f"ccquad {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
