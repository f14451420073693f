"""Command-line entry point: ``almostembed <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 a theorem check failed, 3 a generator
or search ran out of attempts.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import harness, io, moves, space3, svg
from .errors import CannotRoute, ExhaustedRetries, GeometryError, InfeasibleTarget
from .geometry import pt
from .graph import Graph, validate
from .invariants import invariant_report, label

log = logging.getLogger("almostembed")

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_EXHAUSTED = 0, 1, 2, 3
WORKERS_ENV = "ALMOSTEMBED_WORKERS"

GRAPHS = {
    "K3": lambda: Graph.complete(3),
    "K4": lambda: Graph.complete(4),
    "K5": lambda: Graph.complete(5),
    "K5-45": lambda: Graph.complete(5).minus_edge(4, 5),
    "K3,3": lambda: Graph.complete_bipartite(3, 3),
    "K3,3-ab": lambda: Graph.complete_bipartite(3, 3).minus_edge(1, 4),
    "star3": lambda: Graph.star(3),
    "C3": lambda: Graph.cycle(3),
    "C4": lambda: Graph.cycle(4),
}

CYCLE_HELP = (
    'cycles to report: "all" (default) or a ";"-separated list of oriented cycles written '
    '"1-2-3", each optionally followed by ":v=4" to report only that basepoint'
)


class BadInput(Exception):
    pass


def _ints(text: str, count: int | None = None) -> list:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise BadInput(f"expected comma-separated integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise BadInput(f"expected {count} integers, got {len(vals)}")
    return vals


def parse_cycles(text: str):
    """Parse the --cycles syntax into (cycles, basepoint filter); ``None`` cycles means all."""
    if text.strip() == "all":
        return None, {}
    cycles, only = [], {}
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        cyc_text, _, base = item.partition(":")
        try:
            cyc = tuple(int(x) for x in cyc_text.split("-"))
        except ValueError:
            raise BadInput(f"bad cycle {cyc_text!r}; write cycles like 1-2-3") from None
        if len(cyc) < 3:
            raise BadInput(f"cycle {cyc_text!r} needs at least three vertices")
        cycles.append(cyc)
        if base:
            key, _, val = base.partition("=")
            if key.strip() != "v":
                raise BadInput(f"bad basepoint {base!r}; write v=4")
            only.setdefault(cyc, set()).add(int(val))
    return cycles, only


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    f = io.load_drawing(args.file)
    res = validate(f)
    print(f"grade: {res.grade.value}")
    print(f"general position: {'yes' if res.general_position else 'no'}")
    for a, b, witness in res.violations:
        print(f"  {a} meets {b} at {witness}")
    print(f"violations: {len(res.violations)}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    f = io.load_drawing(args.file)
    cycles, only = parse_cycles(args.cycles)
    rep = invariant_report(f, cycles)
    if only:
        n = f.graph.n
        keep = {f"C={label(c, n)},v={v}" for c, vs in only.items() for v in vs}
        unrestricted = {label(c, n) for c in cycles if c not in only}
        rep["wf"] = {k: v for k, v in rep["wf"].items()
                     if k in keep or k.split(",v=")[0][2:] in unrestricted}
    print(json.dumps(rep, indent=2, sort_keys=True))
    return EXIT_OK


def _gen_drawing(args):
    name = args.name
    if name == "ex1.2":
        n = _ints(args.n, 1)[0]
        l = moves.gen_example_1_2(n, pt(0, 0))
        return io.polylines_doc({"l": l}) | {"O": ["0", "0"]}
    if name == "ex1.7":
        n1, n2 = _ints(args.n, 2)
        ls = moves.gen_example_1_7(n1, n2)
        return io.polylines_doc(dict(zip(("l1", "l2", "l3"), ls))) | {"O": ["2", "-2"]}
    if name == "ex3.4":
        return io.drawing_to_dict(moves.gen_example_3_4(*_ints(args.n, 4)))
    if name == "ex5.10":
        return io.drawing_to_dict(moves.gen_example_5_10(*_ints(args.n, 4)))
    if name == "ex5.5b":
        return io.drawing_to_dict(moves.gen_example_5_5b(_ints(args.n, 1)[0]))
    if name == "ex6.3":
        return io.drawing_to_dict(moves.gen_example_6_3_drawing(_ints(args.n, 1)[0]))
    if name == "ex6.6":
        return io.drawing_to_dict(moves.gen_example_6_6_drawing(_ints(args.n, 1)[0]))
    if name == "rand":
        if args.graph not in GRAPHS:
            raise BadInput(f"unknown graph {args.graph!r}; choose from {', '.join(GRAPHS)}")
        return io.drawing_to_dict(moves.random_drawing(GRAPHS[args.graph](), args.seed, grid_size=args.grid))
    if name == "rand-ae":
        if args.template not in moves.TEMPLATES:
            raise BadInput(f"unknown template {args.template!r}; choose from {', '.join(moves.TEMPLATES)}")
        return io.drawing_to_dict(moves.random_almost_embedding(args.template, args.seed, move_budget=args.moves))
    raise BadInput(f"unknown generator {name!r}")


def cmd_gen(args) -> int:
    try:
        doc = _gen_drawing(args)
    except InfeasibleTarget as exc:
        raise BadInput(str(exc)) from None
    _emit(io.dumps(doc), args.output)
    return EXIT_OK


def _workers(args) -> int:
    if args.workers is not None:
        return args.workers
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise BadInput(f"{WORKERS_ENV}={env!r} is not an integer") from None
    return 1


def cmd_sweep(args) -> int:
    cfg = harness.SweepConfig(args.target, args.samples, args.seed, args.grid, args.moves, _workers(args))
    try:
        cfg.check()
    except ValueError as exc:
        raise BadInput(str(exc)) from None
    log.info("sweep config: %s", cfg)
    rep = harness.sweep(cfg)
    if args.json:
        _emit(rep.to_json(), args.json if args.json != "-" else None)
    if args.json != "-":
        print(rep.table())
    return rep.exit_code()


def cmd_search(args) -> int:
    targets = None
    if args.targets:
        targets = [_ints(t) for t in args.targets.split(";") if t.strip()]
    try:
        rep = harness.search_conjecture(args.conjecture, args.budget, args.seed, targets, args.moves)
    except ValueError as exc:
        raise BadInput(str(exc)) from None
    _emit(rep.to_json(), args.output)
    if rep.discoveries:
        log.warning("%d drawing(s) with difference other than +-1 found", len(rep.discoveries))
    return rep.exit_code()


def cmd_svg(args) -> int:
    doc = io.load_json(args.file)
    if "polylines" in doc:
        named = {k: io.polyline_from_json(v) for k, v in doc["polylines"].items()}
        marks = {"O": io.point_from_json(doc["O"])} if "O" in doc else {}
        text = svg.polylines_svg(named, marks)
    else:
        text = svg.drawing_svg(io.drawing_from_dict(doc), title=Path(args.file).name)
    _emit(text, args.output)
    return EXIT_OK


def cmd_link3d(args) -> int:
    if args.action == "lk":
        if not args.file:
            raise BadInput("link3d lk needs a file with two curves")
        curves = io.curves3_from_dict(io.load_json(args.file))
        if len(curves) != 2:
            raise BadInput("link3d lk needs exactly two curves")
        print(space3.linking_number(*curves))
        return EXIT_OK
    if args.action == "cgs":
        if args.file:
            pts = [io.point_from_json(p) for p in io.load_json(args.file)["points"]]
        else:
            pts = space3.moment_curve_points()
        rep = space3.cgs_check(pts)
        key = lambda a, b: "".join(map(str, a)) + "|" + "".join(map(str, b))
        out = {"lk": {key(a, b): v for (a, b), v in sorted(rep.values.items())},
               "oddPairs": [key(a, b) for a, b in rep.odd_pairs]}
        print(json.dumps(out, indent=2))
        return EXIT_OK if rep.odd_pairs else EXIT_VIOLATION
    if args.action == "gen-8.2a":
        f, pair = space3.gen_example_8_2a(args.n)
        doc = io.spatial_to_dict(f) | {"designatedPair": [list(pair[0]), list(pair[1])]}
        _emit(io.dumps(doc), args.output)
        return EXIT_OK
    raise BadInput(f"unknown link3d action {args.action!r}")


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="almostembed", description="Winding-number invariants of graph drawings.")
    p.add_argument("-q", "--quiet", action="store_true", help="do not log the resolved configuration to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="grade a drawing and list intersecting nonadjacent pieces")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", help="print the invariant report of a drawing as JSON")
    s.add_argument("file")
    s.add_argument("--cycles", default="all", help=CYCLE_HELP)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("gen", help="write a generated drawing")
    s.add_argument("name", choices=["ex1.2", "ex1.7", "ex3.4", "ex5.5b", "ex5.10", "ex6.3", "ex6.6", "rand", "rand-ae"])
    s.add_argument("--n", "--params", dest="n", default="0", help="comma-separated integer parameters")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--graph", default="K4", help="graph for rand: " + ", ".join(GRAPHS))
    s.add_argument("--template", default="K4", help="template for rand-ae: " + ", ".join(moves.TEMPLATES))
    s.add_argument("--moves", type=int, default=3, help="successful moves for rand-ae")
    s.add_argument("--grid", type=int, default=101)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("sweep", help="run a seeded verification sweep")
    s.add_argument("--target", required=True, choices=list(harness.TARGETS))
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    s.add_argument("--grid", type=int, default=101)
    s.add_argument("--moves", type=int, default=3)
    s.add_argument("--json", help='write the JSON report to this file ("-" for stdout only)')
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("search", help="look for witnesses of a conjecture")
    s.add_argument("--conjecture", required=True, choices=list(harness.DEFAULT_TARGETS))
    s.add_argument("--budget", type=int, default=500)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--moves", type=int, default=6)
    s.add_argument("--targets", help='";"-separated tuples, e.g. "1,1,1,0;0,0,0,1"')
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("svg", help="render a drawing or polyline document as SVG")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_svg)

    s = sub.add_parser("link3d", help="linking numbers in space")
    s.add_argument("action", choices=["lk", "cgs", "gen-8.2a"])
    s.add_argument("file", nargs="?")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_link3d)
    return p


def _configure_logging(quiet: bool) -> None:
    # reconfigured on every call so repeated in-process runs honour -q and the current stderr
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING if quiet else logging.INFO)
    log.propagate = False


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    _configure_logging(args.quiet)
    log.info("resolved arguments: %s", {k: v for k, v in vars(args).items() if k != "func"})
    try:
        return args.func(args)
    except (BadInput, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ExhaustedRetries, CannotRoute) as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
