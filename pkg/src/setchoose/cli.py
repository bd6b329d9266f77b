"""Command-line entry point: verify claims, export gadgets, solve instances."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .formats import from_edgelist, lists_from_json, lists_to_json, to_dot, to_edgelist
from .gadgets import CATALOG, build, build_final
from .model import StructuralError
from .solver import DomainConstraint, find_coloring

_CLAIM_GROUPS = {
    "lemma1": lambda a: harness.verify_lemma1(a.timeout),
    "cor2": lambda a: harness.verify_corollary2(a.timeout),
    "lemma3": lambda a: harness.verify_lemma3(a.samples or 10000, a.seed, a.timeout),
    "lemma4": lambda a: harness.verify_lemma4(a.samples or 2000, a.seed, a.timeout),
    "lemma5": lambda a: harness.verify_lemma5(a.samples or 2000, a.seed, a.timeout),
    "lemma6": lambda a: harness.verify_lemma_main(a.samples or 10000, a.seed, a.timeout),
    "theorem": lambda a: harness.verify_theorem(a.samples or 100, a.seed, timeout=a.timeout),
}


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.claim == "all":
        reports = harness.run_all(
            seed=args.seed, samples=args.samples, timeout=args.timeout
        )
    else:
        reports = _CLAIM_GROUPS[args.claim](args)
    document = harness.emit_report(reports, args.format)
    if args.out:
        Path(args.out).write_text(document)
    else:
        sys.stdout.write(document)
    return harness.exit_code(reports)


def _cmd_build(args: argparse.Namespace) -> int:
    if args.gadget == "final":
        fc = build_final()
        graph, lists = fc.graph, fc.lists
    else:
        gadget = build(args.gadget)
        graph, lists = gadget.graph, gadget.base_lists
    if args.format == "dot":
        document = to_dot(graph, lists)
    else:
        document = to_edgelist(graph)
    if args.out:
        Path(args.out).write_text(document)
    else:
        sys.stdout.write(document)
    if args.lists:
        Path(args.lists).write_text(lists_to_json(graph, lists))
    return 0


def _parse_forbid(graph, lists, b, specs) -> DomainConstraint | None:
    """Each spec is ``LABEL:c1,c2,...``; a full b-subset forbids that exact
    set, a single color (with b > 1) bans the color from the vertex."""
    if not specs:
        return None
    constraint = DomainConstraint.none()
    for spec in specs:
        try:
            label, colors_text = spec.split(":", 1)
            colors = [int(c) for c in colors_text.split(",") if c]
        except ValueError:
            raise SystemExit(f"bad --forbid spec {spec!r}; expected LABEL:c1,c2")
        v = graph.vertex(label)
        if len(colors) == b:
            constraint = constraint.forbid(v, colors)
        elif len(colors) == 1:
            constraint = constraint.avoid_color(v, colors[0])
        else:
            raise SystemExit(
                f"--forbid {spec!r}: give exactly {b} colors (forbidden subset)"
                " or one color (banned everywhere at that vertex)"
            )
    return constraint


def _cmd_solve(args: argparse.Namespace) -> int:
    graph = from_edgelist(Path(args.graph).read_text())
    lists = lists_from_json(graph, Path(args.lists).read_text())
    constraint = _parse_forbid(graph, lists, args.b, args.forbid)
    result = find_coloring(graph, lists, args.b, constraint)
    sys.stdout.write(json.dumps(result.to_dict(graph), indent=2) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setchoose",
        description="exact set-list-coloring engine and gadget verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verify one claim group or all of them")
    verify.add_argument("claim", choices=sorted(_CLAIM_GROUPS) + ["all"])
    verify.add_argument("--samples", type=int, default=None,
                        help="override sample counts for sampled checks")
    verify.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    verify.add_argument("--timeout", type=float, default=None,
                        help="per-claim budget in seconds (default: built-in budgets)")
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--out", default=None, help="write the report to a file")
    verify.set_defaults(func=_cmd_verify)

    builder = sub.add_parser("build", help="emit a gadget or the final construction")
    builder.add_argument("--gadget", required=True,
                         choices=sorted(CATALOG) + ["final"])
    builder.add_argument("--format", choices=("dot", "edgelist"), default="edgelist")
    builder.add_argument("--out", default=None)
    builder.add_argument("--lists", default=None,
                         help="also write the list assignment as JSON")
    builder.set_defaults(func=_cmd_build)

    solve = sub.add_parser("solve", help="solve one (L:b)-coloring instance")
    solve.add_argument("--graph", required=True, help="edge-list file")
    solve.add_argument("--lists", required=True, help="lists JSON file")
    solve.add_argument("--b", type=int, required=True)
    solve.add_argument("--forbid", action="append", default=[],
                       metavar="LABEL:c1,c2", help="domain restriction (repeatable)")
    solve.set_defaults(func=_cmd_solve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StructuralError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
