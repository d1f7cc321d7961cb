"""Command line interface.

Subcommands: hooks, count, enumerate, psi, phi, verify.  psi expands a
(tableau, hook values) pair into a filling; phi is its inverse.  Exit codes:
0 success, 1 verification or internal-check failure, 2 parse error, 3 size
guard exceeded, 4 semantically invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bijection import Pair, straighten, unstraighten
from .composition import parse_composition, compositions, count_formula
from .enumeration import (
    BRUTE_GUARD,
    EXHAUSTIVE_GUARD,
    count_brute,
    count_recursive,
    enumerate_standard_immaculate,
    verify_bijection,
)
from .errors import (
    GuardExceededError,
    InternalCheckError,
    InvalidInputError,
    ParseError,
)
from .tableau import Tableau, format_grid_text


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _print_trace(trace) -> None:
    for k, (t, h) in enumerate(trace.states, 1):
        print(f"state {k}")
        print("tableau:")
        print(t.to_text())
        print("hooks:")
        print(h.to_text())
        if k <= len(trace.paths):
            cells = " ".join(f"({c.row},{c.col})" for c in trace.paths[k - 1])
            print(f"path {k}: {cells}")


def cmd_hooks(args) -> int:
    alpha = parse_composition(args.shape)
    grid = alpha.hook_lengths()
    if args.format == "json":
        _print_json({"shape": list(alpha.parts), "hook_lengths": [list(r) for r in grid]})
    else:
        print(format_grid_text(grid))
    return 0


def cmd_count(args) -> int:
    alpha = parse_composition(args.shape)
    if args.method == "formula":
        count = count_formula(alpha)
    elif args.method == "recursive":
        count = count_recursive(alpha)
    else:
        count = count_brute(alpha, guard=args.guard)
    if args.format == "json":
        _print_json({"shape": list(alpha.parts), "method": args.method, "count": count})
    else:
        print(count)
    return 0


def cmd_enumerate(args) -> int:
    alpha = parse_composition(args.shape)
    stream = enumerate_standard_immaculate(alpha)
    emitted = 0
    collected = []
    for t in stream:
        if args.limit is not None and emitted >= args.limit:
            break
        if args.format == "json":
            collected.append([list(r) for r in t.rows])
        else:
            print(t.to_text())
            print()
        emitted += 1
    if args.format == "json":
        _print_json(
            {
                "shape": list(alpha.parts),
                "total": count_formula(alpha),
                "count": emitted,
                "tableaux": collected,
            }
        )
    else:
        print(f"count: {emitted}")
    return 0


def cmd_psi(args) -> int:
    pair = Pair.parse(_read_input(args.input))
    result, trace = unstraighten(pair, check=args.check)
    if args.format == "json":
        obj = {"shape": list(result.shape.parts), "result": [list(r) for r in result.rows]}
        if args.trace:
            obj["trace"] = trace.to_json_obj()
        _print_json(obj)
    else:
        if args.trace:
            _print_trace(trace)
            print("result:")
        print(result.to_text())
    return 0


def cmd_phi(args) -> int:
    t = Tableau.parse(_read_input(args.input))
    pair, trace = straighten(t, check=args.check)
    if args.format == "json":
        obj = pair.to_json_obj()
        if args.trace:
            obj["trace"] = trace.to_json_obj()
        _print_json(obj)
    else:
        if args.trace:
            _print_trace(trace)
            print("result:")
        print(pair.to_text())
    return 0


def cmd_verify(args) -> int:
    if (args.shape is None) == (args.n is None):
        raise ParseError("verify needs a SHAPE argument or --n, but not both")
    if args.shape is not None:
        shapes = [parse_composition(args.shape)]
    else:
        if args.n < 1:
            raise ParseError(f"--n must be positive, got {args.n}")
        shapes = list(compositions(args.n))
    reports = []
    for alpha in shapes:
        reports.append(
            verify_bijection(
                alpha,
                mode=args.mode,
                sample_size=args.samples,
                seed=args.seed,
                jobs=args.jobs,
                guard=args.guard,
            )
        )
    all_ok = all(r.ok for r in reports)
    if args.format == "json":
        _print_json({"ok": all_ok, "reports": [r.to_json_obj() for r in reports]})
    else:
        for r in reports:
            print(r.summary())
        good = sum(1 for r in reports if r.ok)
        print(f"{good}/{len(reports)} shapes ok")
    if args.failures_out and not all_ok:
        payload = [
            {
                "shape": list(r.shape),
                "roundtrip_failures": r.roundtrip_failures,
                "assertion_failures": r.assertion_failures,
            }
            for r in reports
            if not r.ok
        ]
        Path(args.failures_out).write_text(json.dumps(payload, indent=2) + "\n")
    return 0 if all_ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="immaculate",
        description="Standard immaculate tableaux: hook lengths, counting, and the straightening bijection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text",
                     help="output format (default text)")

    p = sub.add_parser("hooks", parents=[fmt], help="print the grid of hook lengths")
    p.add_argument("shape", help="composition, e.g. 2,1,2")
    p.set_defaults(func=cmd_hooks)

    p = sub.add_parser("count", parents=[fmt], help="count standard immaculate tableaux")
    p.add_argument("shape")
    p.add_argument("--method", choices=("formula", "recursive", "brute"), default="formula")
    p.add_argument("--guard", type=int, default=BRUTE_GUARD,
                   help=f"size limit for --method brute (default {BRUTE_GUARD})")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[fmt], help="list standard immaculate tableaux")
    p.add_argument("shape")
    p.add_argument("--limit", type=int, default=None, help="stop after this many tableaux")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("psi", parents=[fmt],
                       help="expand a (tableau, hook values) pair into a filling")
    p.add_argument("input", help="pair file (two blank-line-separated blocks or JSON), - for stdin")
    p.add_argument("--check", action="store_true", help="re-verify every step invariant")
    p.add_argument("--trace", action="store_true", help="show every intermediate state")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("phi", parents=[fmt],
                       help="contract a filling into its (tableau, hook values) pair")
    p.add_argument("input", help="tableau file (text rows or JSON), - for stdin")
    p.add_argument("--check", action="store_true", help="re-verify every step invariant")
    p.add_argument("--trace", action="store_true", help="show every intermediate state")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify", parents=[fmt],
                       help="cross-check counts and roundtrip the bijection")
    p.add_argument("shape", nargs="?", default=None, help="one composition to verify")
    p.add_argument("--n", type=int, default=None, help="verify every composition of n instead")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000,
                   help="sample count per side in sampled mode (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="random seed for sampled mode (default 0)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for exhaustive scans (default 1)")
    p.add_argument("--guard", type=int, default=EXHAUSTIVE_GUARD,
                   help=f"size limit for exhaustive mode (default {EXHAUSTIVE_GUARD})")
    p.add_argument("--failures-out", default=None,
                   help="write failing objects to this JSON file")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
