"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid spec (or a refuted
verification instance), 3 budget or cap exhausted (or a budget-skipped
verification instance).
"""
from __future__ import annotations

import argparse
import json
import sys

from .automorphisms import enumerate_involutory_automorphisms
from .canon import automorphism_group, canonical_form
from .caps import Caps, caps_from_env, with_overrides
from .cayley import detect_cayley, stability_check
from .census import RunConfig, compute_record, run_census
from .construct import (
    build_gc_graph,
    enumerate_connection_sets,
    kernel_subgroup,
    make_spec,
    validate_connection_set,
)
from .errors import BudgetExceeded, CapExceeded, DescriptorError, ShapeError, SpecError
from .catalog import builtin_descriptors
from .formats import graph_to_dict, to_dot, to_graph6
from .groups import make_group, mask_of
from .theorems import THEOREM_IDS, run_theorem

USAGE_EXIT = 1
SPEC_EXIT = 2
BUDGET_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="gcg", description="generalized Cayley graph toolkit")
    parser.add_argument("--caps-aut", type=int, default=None, metavar="N",
                        help="override the automorphism search node budget")
    parser.add_argument("--caps-bits", type=int, default=None, metavar="N",
                        help="override the connection-set enumeration bit budget")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker count for the census")
    parser.add_argument("--format", default=None,
                        help="output format (text or json; export: graph6, dot, json)")
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group", help="catalog inspection")
    group_sub = group.add_subparsers(dest="group_command", required=True)
    group_list = group_sub.add_parser("list", help="list builtin group descriptors")
    group_list.add_argument("--max-order", type=int, default=None)

    build = sub.add_parser("build", help="build and validate one spec")
    _spec_flags(build)

    enum = sub.add_parser("enumerate", help="enumerate valid connection sets")
    enum.add_argument("--group", required=True)
    enum.add_argument("--alpha", type=int, required=True)
    enum.add_argument("--nonempty", action="store_true")
    enum.add_argument("--connected", action="store_true")
    enum.add_argument("--up-to-complement", action="store_true")

    analyze = sub.add_parser("analyze", help="full analysis record for one spec")
    _spec_flags(analyze)

    verify = sub.add_parser("verify", help="run a theorem verifier")
    verify.add_argument("theorem_id", choices=sorted(THEOREM_IDS))
    verify.add_argument("--max-order", type=int, default=None)
    verify.add_argument("--p", type=int, default=None)
    verify.add_argument("--k", type=int, default=None)
    verify.add_argument("--m", type=int, default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--group", default=None)
    verify.add_argument("--groups", default=None, help="comma-separated descriptors")

    census = sub.add_parser("census", help="run the catalog census")
    census.add_argument("--max-order", type=int, default=8)
    census.add_argument("--out", required=True)
    census.add_argument("--groups", default=None, help="comma-separated descriptors")

    export = sub.add_parser("export", help="export one spec's graph")
    _spec_flags(export)
    export.add_argument("--canonical", action="store_true",
                        help="graph6: emit the canonical form instead of the as-built labeling")
    export.add_argument("--out", default=None, help="output file (default stdout)")
    return parser


def _spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="group descriptor, e.g. Z4 or Z2xZ6")
    p.add_argument("--alpha", type=int, required=True,
                   help="index into the involutory automorphism enumeration")
    p.add_argument("--set", required=True, dest="set_ids",
                   help="comma-separated element ids (empty string for S={})")


def _parse_ids(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DescriptorError(f"bad element id list {text!r}") from exc


def _resolve_spec(args, caps: Caps):
    g = make_group(args.group, caps)
    autos = enumerate_involutory_automorphisms(g)
    if not 0 <= args.alpha < len(autos):
        raise DescriptorError(
            f"alpha index {args.alpha} out of range; {g.name} has {len(autos)} involutory automorphisms"
        )
    ids = _parse_ids(args.set_ids)
    for x in ids:
        if not 0 <= x < g.order:
            raise SpecError(f"element id {x} out of range for {g.name}")
    return g, autos[args.alpha], ids


def _caps(args) -> Caps:
    return with_overrides(caps_from_env(), aut=args.caps_aut, bits=args.caps_bits)


def _emit(payload: dict, fmt: str | None) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def cmd_group_list(args, caps: Caps) -> int:
    rows = []
    for name in builtin_descriptors(args.max_order):
        g = make_group(name, caps)
        rows.append({"group": g.name, "order": g.order, "abelian": g.abelian})
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True))
    else:
        for row in rows:
            kind = "abelian" if row["abelian"] else "non-abelian"
            print(f"{row['group']:>14}  order {row['order']:>2}  {kind}")
    return 0


def cmd_build(args, caps: Caps) -> int:
    g, alpha, ids = _resolve_spec(args, caps)
    report = validate_connection_set(g, alpha, mask_of(ids))
    payload = {
        "group": g.name,
        "order": g.order,
        "alpha_index": args.alpha,
        "alpha": list(alpha.perm),
        "set_ids": list(ids),
        "cond_i": report.cond_i,
        "cond_ii": report.cond_ii,
        "cond_iii": report.cond_iii,
    }
    if not report.ok:
        if report.witness_ii is not None:
            payload["witness_ii"] = report.witness_ii
        if report.witness_iii is not None:
            payload["witness_iii"] = report.witness_iii
        payload["valid"] = False
        _emit(payload, args.format)
        return SPEC_EXIT
    spec = make_spec(g, alpha, ids)
    x = build_gc_graph(spec)
    kernel = kernel_subgroup(spec)
    payload.update({
        "valid": True,
        "vertices": x.n,
        "edges": x.edge_count(),
        "degree": len(spec.connection),
        "connected": x.is_connected(),
        "bipartite": x.is_bipartite(),
        "kernel": list(kernel.sub.members()),
        "kernel_size": len(kernel),
        "unworthy": len(kernel) > 1,
    })
    desc = automorphism_group(x, caps.aut_node_budget)
    payload["aut_order"] = desc.order
    payload["vertex_transitive"] = len(desc.orbits) <= 1
    payload["cayley"] = detect_cayley(x, caps).status
    payload["stability"] = stability_check(x, caps.aut_node_budget).status
    _emit(payload, args.format)
    return 0


def cmd_enumerate(args, caps: Caps) -> int:
    g = make_group(args.group, caps)
    autos = enumerate_involutory_automorphisms(g)
    if not 0 <= args.alpha < len(autos):
        raise DescriptorError(
            f"alpha index {args.alpha} out of range; {g.name} has {len(autos)} involutory automorphisms"
        )
    sets = [
        list(spec.set_ids())
        for spec in enumerate_connection_sets(
            g, autos[args.alpha],
            nonempty_only=args.nonempty,
            connected_only=args.connected,
            up_to_complement=args.up_to_complement,
            caps=caps,
        )
    ]
    if args.format == "json":
        print(json.dumps({"group": g.name, "alpha_index": args.alpha, "sets": sets}))
    else:
        for ids in sets:
            print(",".join(map(str, ids)) if ids else "")
    return 0


def cmd_analyze(args, caps: Caps) -> int:
    g, alpha, ids = _resolve_spec(args, caps)
    spec = make_spec(g, alpha, ids)
    record = compute_record(spec, args.alpha, caps)
    indent = None if args.format == "json" else 2
    print(json.dumps(record, sort_keys=True, indent=indent))
    return 0


def cmd_verify(args, caps: Caps) -> int:
    params: dict = {}
    if args.max_order is not None:
        params["max_order"] = args.max_order
    for key in ("p", "k", "m", "n"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.group:
        params["group"] = args.group
    if args.groups:
        params["groups"] = args.groups.split(",")
    reports = run_theorem(args.theorem_id, params, caps)
    for report in sorted(reports, key=lambda r: (r.theorem_id, r.instance)):
        print(json.dumps(report.to_json(), sort_keys=True))
    verdicts = {r.verdict for r in reports}
    if "refuted" in verdicts:
        return SPEC_EXIT
    if "skipped" in verdicts:
        return BUDGET_EXIT
    return 0


def cmd_census(args, caps: Caps) -> int:
    groups = tuple(args.groups.split(",")) if args.groups else None
    config = RunConfig(
        max_order=args.max_order,
        out_path=args.out,
        jobs=args.jobs,
        caps=caps,
        groups=groups,
    )
    records = run_census(config)
    print(f"{len(records)} records -> {args.out}")
    return 0


def cmd_export(args, caps: Caps) -> int:
    g, alpha, ids = _resolve_spec(args, caps)
    spec = make_spec(g, alpha, ids)
    x = build_gc_graph(spec)
    fmt = args.format or "graph6"
    if fmt == "graph6":
        if args.canonical:
            text = canonical_form(x, caps.aut_node_budget).fingerprint.decode("ascii")
        else:
            text = to_graph6(x)
    elif fmt == "dot":
        labels = [g.names[v] for v in range(g.order)]
        text = to_dot(x, name=g.name.replace("x", "_"), labels=labels)
    elif fmt == "json":
        text = json.dumps(graph_to_dict(x), sort_keys=True)
    else:
        raise DescriptorError(f"unknown export format {fmt!r}")
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        caps = _caps(args)
        if args.command == "group":
            return cmd_group_list(args, caps)
        if args.command == "build":
            return cmd_build(args, caps)
        if args.command == "enumerate":
            return cmd_enumerate(args, caps)
        if args.command == "analyze":
            return cmd_analyze(args, caps)
        if args.command == "verify":
            return cmd_verify(args, caps)
        if args.command == "census":
            return cmd_census(args, caps)
        if args.command == "export":
            return cmd_export(args, caps)
        parser.error(f"unknown command {args.command!r}")
    except SpecError as exc:
        print(f"gcg: invalid spec: {exc}", file=sys.stderr)
        return SPEC_EXIT
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"gcg: budget exhausted: {exc}", file=sys.stderr)
        return BUDGET_EXIT
    except (DescriptorError, ShapeError) as exc:
        print(f"gcg: error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    return USAGE_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
