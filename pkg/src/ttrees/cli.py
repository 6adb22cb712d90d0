"""Command-line interface.

Exit codes: 0 for success, 1 for a negative domain answer (`check` on a
non-canonical or non-conforming tree, `iso` on non-isomorphic trees),
2 for usage, parse, or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from functools import cmp_to_key
from itertools import islice
from pathlib import Path
from typing import Sequence

from .core import (
    StructuralProblem,
    config_to_ttree,
    parse_config,
    parse_problem,
    parse_ttree,
    parse_ttrees,
    render_ttree,
    ttree_conforms,
    ttree_to_config,
)
from .counting import approx_canonical, comparison_table, count_all, count_canonical
from .order import canonicalize, compare_any, is_canonical, isomorphic
from .search import canonical_removal, enumerate_all, enumerate_canonical


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttrees",
        description="Canonical forms, enumeration, and exact counting of "
        "composition T-trees.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser(
        "count", help="exact total and canonical tree counts of a chain problem"
    )
    count.add_argument("--depth", type=int, required=True, help="chain depth p")
    count.add_argument("--branch", type=int, required=True, help="branching bound k")
    count.add_argument(
        "--approx",
        action="store_true",
        help="also print the closed-form approximation of the canonical count",
    )

    table = commands.add_parser(
        "table", help="grid of total/canonical counts for small chain problems"
    )
    table.add_argument("--pmax", type=int, required=True)
    table.add_argument("--kmax", type=int, required=True)
    table.add_argument("--csv", action="store_true", help="emit p,k,N,M rows")

    enum = commands.add_parser("enum", help="enumerate the T-trees of a problem file")
    enum.add_argument("problem", type=Path)
    enum.add_argument(
        "--canonical",
        action="store_true",
        help="emit only canonical trees (one per isomorphism class)",
    )
    enum.add_argument(
        "--sorted", action="store_true", help="emit in increasing tree order"
    )
    enum.add_argument(
        "--max-depth",
        type=int,
        default=None,
        help="height bound (required for cyclic type graphs)",
    )
    enum.add_argument("--limit", type=int, default=None, help="stop after this many")

    check = commands.add_parser("check", help="test whether a T-tree is canonical")
    check.add_argument("--problem", type=Path, default=None)
    check.add_argument("expr")

    canon = commands.add_parser(
        "canon", help="print the canonical representative of a T-tree"
    )
    canon.add_argument("--problem", type=Path, default=None)
    canon.add_argument("expr")

    iso = commands.add_parser("iso", help="test whether two T-trees are isomorphic")
    iso.add_argument("--problem", type=Path, default=None)
    iso.add_argument("left")
    iso.add_argument("right")

    removal = commands.add_parser(
        "removal", help="apply one canonical leaf removal to a T-tree"
    )
    removal.add_argument("--problem", type=Path, default=None)
    removal.add_argument("expr")

    roundtrip = commands.add_parser(
        "roundtrip",
        help="read a configuration file, print its T-tree, verify the "
        "conversion is invertible",
    )
    roundtrip.add_argument("--problem", type=Path, default=None)
    roundtrip.add_argument("config", type=Path)

    return parser


def _load_problem(path: Path | None, *, allow_cyclic: bool = True) -> StructuralProblem | None:
    if path is None:
        return None
    return parse_problem(path.read_text(encoding="utf-8"), allow_cyclic=allow_cyclic)


def _cmd_count(args: argparse.Namespace) -> int:
    n = count_all(args.depth, args.branch)
    m = count_canonical(args.depth, args.branch)
    line = f"N={n} M={m}"
    if args.approx:
        line += f" approx={approx_canonical(args.depth, args.branch):.6g}"
    print(line)
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    table = comparison_table(args.pmax, args.kmax)
    print(table.to_csv() if args.csv else table.to_text(), end="")
    return 0


def _cmd_enum(args: argparse.Namespace) -> int:
    problem = parse_problem(args.problem.read_text(encoding="utf-8"), allow_cyclic=True)
    if problem.is_cyclic and args.max_depth is None:
        print(
            "error: cyclic composition type graph; pass --max-depth",
            file=sys.stderr,
        )
        return 2
    enumerator = enumerate_canonical if args.canonical else enumerate_all
    stream = enumerator(problem, max_height=args.max_depth)
    if args.sorted:
        trees = sorted(stream, key=cmp_to_key(lambda a, b: compare_any(a, b).value))
        stream = iter(trees)
    for tree in islice(stream, args.limit):
        print(render_ttree(tree))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    problem = _load_problem(args.problem)
    tree = parse_ttree(args.expr, problem)
    if problem is not None and not ttree_conforms(tree, problem):
        print("non-conforming")
        return 1
    if is_canonical(tree):
        print("canonical")
        return 0
    print("non-canonical")
    return 1


def _cmd_canon(args: argparse.Namespace) -> int:
    tree = parse_ttree(args.expr, _load_problem(args.problem))
    print(render_ttree(canonicalize(tree)))
    return 0


def _cmd_iso(args: argparse.Namespace) -> int:
    left, right = parse_ttrees([args.left, args.right], _load_problem(args.problem))
    if isomorphic(left, right):
        print("isomorphic")
        return 0
    print("not isomorphic")
    return 1


def _cmd_removal(args: argparse.Namespace) -> int:
    tree = parse_ttree(args.expr, _load_problem(args.problem))
    print(render_ttree(canonical_removal(tree)))
    return 0


def _cmd_roundtrip(args: argparse.Namespace) -> int:
    problem = _load_problem(args.problem)
    config = parse_config(args.config.read_text(encoding="utf-8"), problem)
    tree = config_to_ttree(config)
    if config_to_ttree(ttree_to_config(tree)) != tree:
        print("round trip failed", file=sys.stderr)
        return 2
    print(render_ttree(tree))
    return 0


_COMMANDS = {
    "count": _cmd_count,
    "table": _cmd_table,
    "enum": _cmd_enum,
    "check": _cmd_check,
    "canon": _cmd_canon,
    "iso": _cmd_iso,
    "removal": _cmd_removal,
    "roundtrip": _cmd_roundtrip,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Execute one command; returns the process exit status."""
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
