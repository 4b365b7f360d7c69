"""Command-line front end.

Exit codes: 0 on success, 1 when a property check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import dsl
from .checks import SUITES, run_suites
from .group_core import GroupDef, GroupDefError, load_group
from .ordered_group import IncompatibleRanks, parse_lambda
from .tree import TreeError, TreePoint, act, base_point, distance, spine, spine_to_dot, spine_to_text
from .words import NotRepresentable

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (GroupDefError, dsl.ParseError, TreeError, NotRepresentable, IncompatibleRanks, ValueError, OSError)


def parse_point(G: GroupDef, text: str) -> TreePoint:
    """``e`` for the base point, otherwise ``<alpha>@<expr>``."""
    text = text.strip()
    if text in ("e", "ε"):
        return base_point(G)
    alpha, sep, expr = text.partition("@")
    if not sep:
        raise TreeError(f"point must be 'e' or '<alpha>@<expr>', got {text!r}")
    return TreePoint(parse_lambda(alpha, G.rank), G.evaluate(expr))


def cmd_eval(G: GroupDef, expr: str) -> list[str]:
    g = G.evaluate(expr)
    w = g.word
    if w.is_empty:
        return ["ε", f"length {g.length}"]
    return [
        f"word {w}",
        f"length {g.length}",
        f"first {w.first_letter()}",
        f"last {w.last_letter()}",
        f"shape {w.shape()}",
    ]


def cmd_dist(G: GroupDef, p: str, q: str) -> list[str]:
    return [str(distance(parse_point(G, p), parse_point(G, q)))]


def cmd_act(G: GroupDef, expr: str, point: str) -> list[str]:
    return [str(act(G.evaluate(expr), parse_point(G, point)))]


def cmd_spine(G: GroupDef, exprs: Sequence[str], fmt: str) -> str:
    sp = spine(G, [G.evaluate(e) for e in exprs])
    return spine_to_dot(sp) if fmt == "dot" else spine_to_text(sp, G)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambdatree", description="Groups of infinite words and their Λ-trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a generator expression")
    p.add_argument("defs")
    p.add_argument("expr")

    p = sub.add_parser("dist", help="distance between two tree points")
    p.add_argument("defs")
    p.add_argument("p")
    p.add_argument("q")

    p = sub.add_parser("act", help="apply a group element to a tree point")
    p.add_argument("defs")
    p.add_argument("expr")
    p.add_argument("point")

    p = sub.add_parser("spine", help="export the subtree spanned by orbit points")
    p.add_argument("defs")
    p.add_argument("exprs", nargs="+")
    p.add_argument("--format", choices=("dot", "text"), default="dot")
    p.add_argument("--out")

    p = sub.add_parser("check", help="run randomized axiom suites")
    p.add_argument("defs")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        G = load_group(args.defs)
        if args.command == "check":
            if args.samples < 0:
                raise ValueError("--samples must be non-negative")
            report = run_suites(G, args.suite, args.samples, args.seed)
            print(report)
            return EXIT_OK if report.passed else EXIT_VIOLATION
        if args.command == "eval":
            out = cmd_eval(G, args.expr)
        elif args.command == "dist":
            out = cmd_dist(G, args.p, args.q)
        elif args.command == "act":
            out = cmd_act(G, args.expr, args.point)
        else:
            text = cmd_spine(G, args.exprs, args.format)
            if args.out:
                Path(args.out).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return EXIT_OK
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print("\n".join(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
