"""Command-line front end.

Subcommands: analyze, saturated, saturate, decompose, construct, hasse,
verify.  All outputs are byte-deterministic for fixed inputs and flags.

Exit codes: 0 success (1 for `saturated` on an unsaturated graph and for
`verify` with failing checks), 2 usage or input-format errors, 3 domain
precondition violations, 4 internal structure violations (a structural
guarantee failed, which means a bug in this package, not in the input).
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from .canonical import component_poset
from .construction import construct_tree, decompose, saturate, is_saturated
from .errors import GraphFormatError, PreconditionError, StructureViolation
from .graph import Graph, parse_edge_list, render_edge_list
from .serialize import (
    analysis_dict,
    analysis_text,
    hasse_dot,
    report_json,
    report_text,
    tree_from_json,
    tree_to_json,
)
from .verify import TrialConfig, run_trials

import json


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return parse_edge_list(_read_text(path))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _even(value: str) -> int:
    n = int(value)
    if n < 2 or n % 2:
        raise argparse.ArgumentTypeError("must be an even integer >= 2")
    return n


def _cmd_analyze(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    analysis = analysis_dict(
        graph,
        include_deleted_partitions=args.ge,
        max_components=args.max_components,
    )
    if args.format == "json":
        _emit(json.dumps(analysis, indent=2) + "\n", args.output)
    else:
        _emit(analysis_text(analysis), args.output)
    return 0


def _cmd_saturated(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    if is_saturated(graph):
        sys.stdout.write("saturated\n")
        return 0
    sys.stdout.write("not saturated\n")
    return 1


def _cmd_saturate(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    closed, added = saturate(graph)
    comments = [f"closure: {len(added)} edge(s) added"]
    comments.extend(f"added {u} {v}" for u, v in added)
    _emit(render_edge_list(closed, comments), args.output)
    if args.output is not None:
        sys.stdout.write(f"{len(added)} edge(s) added\n")
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    _emit(tree_to_json(decompose(graph)), args.output)
    return 0


def _cmd_construct(args: argparse.Namespace) -> int:
    tree = tree_from_json(_read_text(args.file))
    _emit(render_edge_list(construct_tree(tree)), args.output)
    return 0


def _cmd_hasse(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    poset = component_poset(graph, max_components=args.max_components)
    _emit(hasse_dot(poset), args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    config = TrialConfig(
        seed=args.seed,
        trials=args.trials,
        max_vertices=args.max_n,
        edge_probability=args.p,
        enumeration_cap=args.cap,
    )
    reports = run_trials(config)
    if args.format == "json":
        _emit(report_json(config, reports, include_timing=args.timings), args.output)
    else:
        _emit(report_text(config, reports, include_timing=args.timings), args.output)
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cathedral",
        description=(
            "Canonical matching structures of factorizable graphs: components, "
            "canonical partition, component order, saturation, and the "
            "foundation/towers decomposition of saturated graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, handler: Callable[[argparse.Namespace], int]) -> None:
        p.add_argument("-o", "--output", metavar="OUT", help="write output here instead of stdout")
        p.set_defaults(handler=handler)

    p = sub.add_parser("analyze", help="components, partition, order, saturation")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--ge", action="store_true", help="include the partition of each single-vertex deletion")
    p.add_argument("--max-components", type=int, default=16)
    common(p, _cmd_analyze)

    p = sub.add_parser("saturated", help="exit 0 if the graph is saturated, 1 otherwise")
    p.add_argument("file", metavar="FILE")
    common(p, _cmd_saturated)

    p = sub.add_parser("saturate", help="write a saturation closure with the added edges")
    p.add_argument("file", metavar="FILE")
    common(p, _cmd_saturate)

    p = sub.add_parser("decompose", help="write the foundation/towers tree as JSON")
    p.add_argument("file", metavar="FILE")
    common(p, _cmd_decompose)

    p = sub.add_parser("construct", help="rebuild a graph from a tree JSON file")
    p.add_argument("file", metavar="SPEC")
    common(p, _cmd_construct)

    p = sub.add_parser("hasse", help="write the component order's Hasse diagram as DOT")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--max-components", type=int, default=16)
    common(p, _cmd_hasse)

    p = sub.add_parser("verify", help="run the conformance suite on random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=_even, default=8)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timings", action="store_true", help="include wall-clock millis (non-deterministic)")
    common(p, _cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except StructureViolation as exc:
        print(f"structure violation (internal bug): {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
