"""Command-line interface.

Exit codes: 0 success, 1 verify failures, 2 usage error, 3 domain or
validation error, 4 decider budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .core import FinitePath, PathError, format_degree
from .deciders import DEFAULT, Decided, is_bi_extensible, is_right_extensible
from .finite import to_dot
from .oracle import FAMILIES, PresentationError, ball, load_graph
from .stream import BudgetExhausted, EulerStream, Mode, Side

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_EXHAUSTED = 4


def _conditions(desc) -> str:
    return "".join(sorted(desc.conditions)) or "none"


def cmd_families(args: argparse.Namespace) -> int:
    for name, make in FAMILIES.items():
        d = make()
        print(f"{name} odd_vertex={str(d.has_odd_vertex).lower()} conditions={_conditions(d)}")
    return EXIT_OK


def cmd_describe(args: argparse.Namespace) -> int:
    desc = load_graph(args.graph)
    G = desc.oracle
    print(f"graph {desc.name} odd_vertex={str(desc.has_odd_vertex).lower()} conditions={_conditions(desc)}")
    for v in args.vertex or []:
        if G.is_vertex(v):
            print(f"vertex {v} degree {format_degree(G.degree(v))}")
        else:
            print(f"vertex {v} absent")
    for e in args.edge or []:
        if G.is_edge(e):
            inc = G.incidence(e)
            print(f"edge {e} joins {inc.u} {inc.v}")
        else:
            print(f"edge {e} absent")
    return EXIT_OK


def cmd_stream(args: argparse.Namespace) -> int:
    desc = load_graph(args.graph)
    mode = Mode(args.mode)
    if mode is Mode.TWO_WAY and args.start is not None:
        raise ValueError("--start only applies to one-way streams")
    budget = DEFAULT if args.budget is None else args.budget
    stream = EulerStream(desc, mode, args.start, decider_budget=budget)
    it = iter(stream)
    for _ in range(args.count):
        step = next(it)
        print(f"pos {step.position} edge {step.edge} vertex {step.vertex}")
    return EXIT_OK


def cmd_extendable(args: argparse.Namespace) -> int:
    desc = load_graph(args.graph)
    try:
        tokens = [int(tok) for tok in args.path.split()]
    except ValueError:
        raise PathError(f"path tokens must be integers: {args.path!r}") from None
    path = FinitePath.from_tokens(tokens, args.base)
    decide = is_right_extensible if Mode(args.mode) is Mode.ONE_WAY else is_bi_extensible
    budget = DEFAULT if args.budget is None else args.budget
    out = decide(desc, path, budget)
    if isinstance(out, Decided):
        print("true" if out.answer else "false")
        return EXIT_OK
    print("exhausted")
    return EXIT_EXHAUSTED


def cmd_ball(args: argparse.Namespace) -> int:
    desc = load_graph(args.graph)
    B = ball(desc.oracle, args.vertex, args.radius, args.bound)
    if args.dot:
        sys.stdout.write(to_dot(B, "ball"))
    else:
        print("vertices " + " ".join(map(str, sorted(B.vertices))))
        print("edges " + " ".join(map(str, B.edges)))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import run_all

    ok = True
    for report in run_all(args.stages):
        print(report.render(), flush=True)
        ok &= report.passed
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _nat(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infeuler",
        description="Infinite Eulerian paths on oracle-presented multigraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="list built-in graph families")
    p.set_defaults(func=cmd_families)

    graph_help = "built-in family name or presentation file path"
    p = sub.add_parser("describe", help="answer vertex/edge/degree queries")
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--vertex", type=_nat, action="append", help="vertex id (repeatable)")
    p.add_argument("--edge", type=_nat, action="append", help="edge id (repeatable)")
    p.set_defaults(func=cmd_describe)

    modes = [m.value for m in Mode]
    p = sub.add_parser("stream", help="emit a prefix of an infinite Eulerian path")
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--mode", required=True, choices=modes)
    p.add_argument("--start", type=_nat)
    p.add_argument("--count", type=_nat, required=True)
    p.add_argument("--budget", type=_nat, help="step budget per decider query")
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("extendable", help="decide whether a finite path extends")
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--mode", required=True, choices=modes)
    p.add_argument("--path", required=True, help='flat token list "v0 e0 v1 ... vk"')
    p.add_argument("--base", type=int, default=0, help="domain offset of v0")
    p.add_argument("--budget", type=_nat)
    p.set_defaults(func=cmd_extendable)

    p = sub.add_parser("ball", help="print the ball G(v, r, s)")
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--vertex", type=_nat, required=True)
    p.add_argument("--radius", type=_nat, required=True)
    p.add_argument("--bound", type=_nat, required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--stages", type=_nat, default=40)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (PathError, PresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
