"""Command-line interface: one subcommand per engine operation family.

Vertex indices on the command line are 1-based, matching the quiver file
format.  Exit codes: 0 success, 1 domain error, 2 integrity error, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import PRESETS, dynkin_quiver
from .errors import DomainError, IntegrityError
from .quiver import IceQuiver, mutate_matrix

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _load_quiver(args):
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return IceQuiver.loads(fh.read())
    if getattr(args, "preset", None):
        if args.preset not in PRESETS:
            raise DomainError(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}")
        return PRESETS[args.preset]()
    if getattr(args, "dynkin", None):
        return dynkin_quiver(args.dynkin)
    raise DomainError("provide a quiver via --file, --preset or --dynkin")


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _parse_at(values, n):
    out = []
    for v in values:
        k = int(v)
        if not 1 <= k <= n:
            raise DomainError(f"vertex {k} is out of the mutable range 1..{n}")
        out.append(k - 1)
    return out


def cmd_mutate(args):
    quiver = _load_quiver(args)
    for k in _parse_at(args.at, quiver.n):
        quiver = mutate_matrix(quiver, k)
    _emit(args, quiver.to_json(), quiver.to_text().rstrip())
    return 0


def cmd_class(args):
    from .mutation_class import mutation_class

    quiver = _load_quiver(args)
    report = mutation_class(quiver, cap=args.cap, threads=args.threads)
    payload = report.to_json()
    lines = [f"class size: {report.class_size}" + (" (cap exceeded)" if report.exceeded_cap else "")]
    lines.append(f"max multiplicity: {report.max_multiplicity}")
    if args.count_double_arrows:
        payload["double"] = report.double_arrow_count
        lines.append(f"members with a double arrow: {report.double_arrow_count}")
    if report.dynkin_hit:
        lines.append(f"contains a Dynkin orientation: {report.dynkin_hit}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_classify(args):
    from .mutation_class import classify

    quiver = _load_quiver(args)
    result = classify(quiver, cap=args.cap)
    human = f"{result.status}" + (f" ({result.dynkin_type})" if result.dynkin_type else "")
    _emit(args, result.to_json(), f"{human}: {result.evidence}")
    return 0


def cmd_seeds(args):
    from .seeds import exchange_graph

    quiver = _load_quiver(args)
    graph = exchange_graph(quiver, seed_cap=args.seed_cap, var_cap=args.var_cap)
    human = (
        f"seeds: {graph.seed_count}\nedges: {graph.edge_count}\n"
        f"cluster variables: {len(graph.variables)}\ncomplete: {graph.complete}"
    )
    _emit(args, graph.to_json(), human)
    return 0


def cmd_variables(args):
    from .seeds import all_cluster_variables

    quiver = _load_quiver(args)
    variables = all_cluster_variables(quiver, seed_cap=args.seed_cap, var_cap=args.var_cap)
    formatted = sorted(v.format() for v in variables)
    _emit(
        args,
        {"count": len(formatted), "variables": formatted},
        "\n".join(formatted) + f"\n({len(formatted)} variables)",
    )
    return 0


def cmd_knit(args):
    from .knitting import Repetition, knit

    quiver = _load_quiver(args)
    frame = knit(quiver, window=args.window)
    if args.json:
        print(json.dumps(frame.to_json(), indent=2, sort_keys=True))
    else:
        rep = Repetition.build(quiver, 0, len(frame.slices) - 1)
        print(rep.render(assignment=frame.assignment))
        print(f"period: {frame.period}")
    return 0


def cmd_yseed(args):
    from .ydynamics import YSeed, mutate_y_seed

    quiver = _load_quiver(args)
    ys = YSeed.initial(quiver)
    path = [int(x) for x in args.path.split(",")] if args.path else []
    for k in path:
        if not 1 <= k <= quiver.n:
            raise DomainError(f"vertex {k} out of range 1..{quiver.n}")
        ys = mutate_y_seed(ys, k - 1)
    names = [f"y{l+1}" for l in range(quiver.n)]
    human = "\n".join(
        [f"c-matrix: {list(ys.c)}"]
        + [f"F_{j+1} = {p.format(names)}" for j, p in enumerate(ys.fpolys)]
        + [f"Y_{j+1} = {y.format(names)}" for j, y in enumerate(ys.yvars)]
    )
    _emit(args, ys.to_json(), human)
    return 0


def cmd_periodicity(args):
    from .periodicity import phi_order_check, verify_restricted_periodicity

    cert = verify_restricted_periodicity(
        args.pair, mode=args.mode, point_sets=args.point_sets, rng_seed=args.seed
    )
    payload = cert.to_json()
    if args.check_phi:
        payload["phi_order_divides"] = phi_order_check(
            args.pair, mode="exact" if args.mode == "exact" else "modular", rng_seed=args.seed
        )
    human = (
        f"pair {cert.pair}: period {cert.period} "
        f"{'divides' if cert.divides else 'DOES NOT divide'} h+h' = {cert.h + cert.h_prime} "
        f"[{cert.mode}]"
    )
    _emit(args, payload, human)
    return 0


def cmd_cc(args):
    from .ccformula import (
        QuiverRep,
        caldero_chapoton,
        d4_three_lines_module,
        interval_module,
    )

    if args.d4_example:
        rep = d4_three_lines_module()
    elif args.file:
        with open(args.file) as fh:
            rep = QuiverRep.from_json(json.load(fh))
    elif args.interval:
        lo, hi = (int(x) for x in args.interval.split(","))
        quiver = _load_quiver(args)
        rep = interval_module(quiver, lo - 1, hi - 1)
    else:
        raise DomainError("provide --d4-example, --file, or --interval p,q with a quiver")
    value = caldero_chapoton(rep)
    _emit(
        args,
        {"dims": list(rep.dims), "cc": value.to_json_terms(), "pretty": value.format()},
        value.format(),
    )
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser():
    parser = _Parser(prog="cluster-workbench", description=__doc__)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed for randomized checks")
    parser.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="enumeration parallelism",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    cap_default = int(os.environ.get("CLUSTER_WORKBENCH_CAP", "100000"))

    def add_quiver_source(p, dynkin=True):
        p.add_argument("--file", help="quiver file (text or JSON)")
        p.add_argument("--preset", help=f"built-in quiver: {', '.join(sorted(PRESETS))}")
        if dynkin:
            p.add_argument("--dynkin", help="Dynkin type, e.g. A3 or G2")

    p = sub.add_parser("mutate", help="apply matrix mutations")
    add_quiver_source(p)
    p.add_argument("--at", action="append", required=True, help="1-based vertex; repeatable")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("class", help="enumerate the mutation class")
    add_quiver_source(p)
    p.add_argument("--cap", type=int, default=cap_default)
    p.add_argument("--count-double-arrows", action="store_true")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("classify", help="cluster-finiteness classification")
    add_quiver_source(p)
    p.add_argument("--cap", type=int, default=cap_default)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("seeds", help="enumerate the exchange graph")
    add_quiver_source(p)
    p.add_argument("--seed-cap", type=int, default=50000)
    p.add_argument("--var-cap", type=int, default=20000)
    p.set_defaults(func=cmd_seeds)

    p = sub.add_parser("variables", help="list all cluster variables")
    add_quiver_source(p)
    p.add_argument("--seed-cap", type=int, default=50000)
    p.add_argument("--var-cap", type=int, default=20000)
    p.set_defaults(func=cmd_variables)

    p = sub.add_parser("knit", help="run the knitting algorithm")
    add_quiver_source(p)
    p.add_argument("--window", type=int, default=None, help="max columns")
    p.set_defaults(func=cmd_knit)

    p = sub.add_parser("yseed", help="mutate the initial Y-seed along a path")
    add_quiver_source(p)
    p.add_argument("--path", default="", help="comma-separated 1-based vertices")
    p.set_defaults(func=cmd_yseed)

    p = sub.add_parser("periodicity", help="verify restricted Y-pattern periodicity")
    p.add_argument("--pair", required=True, help="Dynkin pair, e.g. A2,A2")
    p.add_argument("--mode", choices=["exact", "modular"], default="exact")
    p.add_argument("--point-sets", type=int, default=2)
    p.add_argument("--check-phi", action="store_true")
    p.set_defaults(func=cmd_periodicity)

    p = sub.add_parser("cc", help="Caldero-Chapoton polynomial of a representation")
    add_quiver_source(p)
    p.add_argument("--interval", help="interval module p,q (1-based) over --dynkin An")
    p.add_argument("--d4-example", action="store_true", help="the three-lines D4 module")
    p.set_defaults(func=cmd_cc)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
