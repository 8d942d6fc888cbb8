"""Command-line entry point.

Exit status: 0 on success, 1 when a check fails, 2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from .graph_model import (BINARY, GENERAL, GraphError, LabeledGraph, check_binary_conditions,
                          check_general_conditions, classify_route, parse_graph,
                          serialize_graph, to_dot)
from .generate import gen_random
from .planner import PlanError, plan as make_plan, plan_to_json, simulate_fiber_transitions
from .reeb import ReebError, compute_reeb
from .surface import AssemblyError, MeshError, assemble, read_rmesh, write_off, write_rmesh
from .verifier import GroupingError, MatchReport, group_micro_levels, isomorphic_labeled, \
    verify_roundtrip


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _graph(path: str) -> LabeledGraph:
    try:
        return parse_graph(_read(path))
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_validate(args) -> int:
    g = _graph(args.graph)
    if g.mode == GENERAL:
        results = check_general_conditions(g)
        ok = all(r.passed for r in results)
        for r in results:
            print(("ok   " if r.passed else "FAIL ") + r.reason)
        return 0 if ok else 1
    circle = check_binary_conditions(g)
    routes = classify_route(g)
    for v in g.vertices:
        flag = "circle-route" if circle[v].passed else "line-route  "
        print(f"vertex {v}: {flag} {routes[v]}  ({circle[v].reason})")
    return 0


def cmd_plan(args) -> int:
    g = _graph(args.graph)
    try:
        p = make_plan(g, n=args.dim)
    except PlanError as exc:
        print(f"plan failed: {exc}", file=sys.stderr)
        return 1
    sim = simulate_fiber_transitions(p)
    _write(args.output, plan_to_json(p))
    if not sim.passed:
        print(f"simulation failed at {sim.failed_model}: {sim.reason}", file=sys.stderr)
        return 1
    return 0


def cmd_synthesize(args) -> int:
    g = _graph(args.graph)
    if g.mode != BINARY:
        print("surface synthesis needs a binary-mode graph", file=sys.stderr)
        return 1
    try:
        mesh = assemble(make_plan(g))
    except (PlanError, AssemblyError) as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return 1
    _write(args.output, write_rmesh(mesh, with_coords=args.coords))
    if args.off:
        _write(args.off, write_off(mesh))
    return 0


def _mesh(path: str):
    try:
        return read_rmesh(_read(path))
    except MeshError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_reeb(args) -> int:
    mesh = _mesh(args.mesh)
    problems = mesh.invariant_violations()
    try:
        r = compute_reeb(mesh, args.backend)
    except ReebError as exc:
        print(f"reeb failed: {exc}", file=sys.stderr)
        if problems:
            print("mesh problems: " + "; ".join(problems[:5]), file=sys.stderr)
        return 1
    if problems:
        print("mesh is not a valid surface: " + "; ".join(problems[:5]), file=sys.stderr)
        return 1
    _write(args.output, r.to_rgl())
    if args.dot:
        _write(args.dot, r.to_dot())
    return 0


def _emit(report: MatchReport, as_json: bool) -> None:
    sys.stdout.write(report.to_json() if as_json else report.to_text())


def cmd_verify(args) -> int:
    g = _graph(args.graph)
    mesh = _mesh(args.mesh)
    problems = mesh.invariant_violations()
    if problems:
        report = MatchReport(False, {}, ["mesh invariants: " + p for p in problems[:5]])
    else:
        try:
            computed = compute_reeb(mesh, args.backend)
            grouped = group_micro_levels(computed, make_plan(g))
            report = isomorphic_labeled(g, grouped)
        except (ReebError, GroupingError, PlanError) as exc:
            report = MatchReport(False, {}, [f"{type(exc).__name__}: {exc}"])
        report.info["euler_characteristic"] = mesh.euler_characteristic()
    _emit(report, args.json)
    return 0 if report.passed else 1


def cmd_roundtrip(args) -> int:
    if args.batch:
        seeds = list(range(args.seed, args.seed + args.batch))
        graphs = [gen_random(args.budget, s, all_ones=args.all_ones) for s in seeds]
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            reports = list(pool.map(lambda g: verify_roundtrip(g, args.backend), graphs))
        failed = [s for s, r in zip(seeds, reports) if not r.passed]
        if args.json:
            doc = {"instances": len(seeds), "failed_seeds": failed,
                   "reports": {str(s): json.loads(r.to_json()) for s, r in zip(seeds, reports)}}
            sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        else:
            for s, r in zip(seeds, reports):
                status = "pass" if r.passed else "FAIL " + "; ".join(r.diagnostics[:2])
                print(f"seed {s}: {status}")
            print(f"{len(seeds) - len(failed)}/{len(seeds)} passed")
        return 0 if not failed else 1
    if not args.graph:
        raise InputError("roundtrip needs a graph file or --batch")
    report = verify_roundtrip(_graph(args.graph), args.backend)
    _emit(report, args.json)
    return 0 if report.passed else 1


def cmd_gen_random(args) -> int:
    mode = GENERAL if args.dim and args.dim >= 2 else BINARY
    g = gen_random(args.budget, args.seed, mode=mode, n=args.dim if mode == GENERAL else None,
                   all_ones=args.all_ones)
    _write(args.output, to_dot(g) if args.dot else serialize_graph(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reebsynth", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check realizability conditions of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("plan", help="emit the construction plan as JSON")
    p.add_argument("graph")
    p.add_argument("--dim", type=int, default=None, help="fiber dimension n")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("synthesize", help="build a surface mesh for a binary graph")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.add_argument("--off", help="also write an OFF file")
    p.add_argument("--coords", action="store_true", help="include layout coordinates")
    p.set_defaults(func=cmd_synthesize)

    backends = dict(choices=["python", "cython"], default=None)
    p = sub.add_parser("reeb", help="compute the Reeb graph of a mesh")
    p.add_argument("mesh")
    p.add_argument("-o", "--output")
    p.add_argument("--dot")
    p.add_argument("--backend", **backends)
    p.set_defaults(func=cmd_reeb)

    p = sub.add_parser("verify", help="compare a mesh's Reeb graph with a graph")
    p.add_argument("graph")
    p.add_argument("mesh")
    p.add_argument("--json", action="store_true")
    p.add_argument("--backend", **backends)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roundtrip", help="plan, synthesize and verify")
    p.add_argument("graph", nargs="?")
    p.add_argument("--batch", type=int, default=0, help="number of random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=12)
    p.add_argument("--all-ones", action="store_true")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.add_argument("--backend", **backends)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("gen-random", help="write a random labeled graph")
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=None, help="general mode with this n")
    p.add_argument("--all-ones", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_random)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if not 0 <= getattr(args, "seed", 0) < 2 ** 64:
        print("seed must be a 64-bit unsigned integer", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
