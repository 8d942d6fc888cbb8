"""Round-trip verification: does the computed Reeb graph realize the input?"""

from __future__ import annotations

import json
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .graph_model import BINARY, LabeledGraph, format_rational
from .planner import ConstructionPlan, FiberType, plan as make_plan, simulate_fiber_transitions
from .reeb import ComputedReebGraph, ReebEdge, ReebNode, compute_reeb
from .surface import assemble


class GroupingError(ValueError):
    pass


@dataclass
class MatchReport:
    passed: bool
    mapping: Dict[int, int] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"verdict: {'pass' if self.passed else 'fail'}"]
        for k in sorted(self.info):
            lines.append(f"{k}: {self.info[k]}")
        if self.mapping:
            pairs = ", ".join(f"{u}->{v}" for u, v in sorted(self.mapping.items()))
            lines.append(f"mapping: {pairs}")
        lines += [f"- {d}" for d in self.diagnostics]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "verdict": "pass" if self.passed else "fail",
            "mapping": {str(u): v for u, v in sorted(self.mapping.items())},
            "diagnostics": list(self.diagnostics),
            "info": {k: self.info[k] for k in sorted(self.info)},
        }
        return json.dumps(doc, indent=2, default=str) + "\n"


def group_micro_levels(computed: ComputedReebGraph, plan: ConstructionPlan) -> ComputedReebGraph:
    """Contract the essential nodes inside each vertex collar.

    Nodes whose values fall in the collar window of a value h are clustered
    by the edges running inside that window.  Each cluster becomes one node
    carrying h exactly.  Vertices sharing h are told apart by connectivity,
    since no edge joins two vertices of equal value.
    """
    windows = {}
    for v, h in plan.values.items():
        windows.setdefault(h, plan.collar_interval(v))
    expected = Counter(plan.values.values())
    window_of: Dict[int, object] = {}
    for n, node in computed.nodes.items():
        hits = [h for h, (lo, hi) in windows.items() if lo <= node.value <= hi]
        if len(hits) != 1:
            raise GroupingError(f"node at {format_rational(node.value)} lies in "
                                f"{len(hits)} collar windows")
        window_of[n] = hits[0]
    parent = {n: n for n in computed.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in computed.edges:
        if window_of[e.lo] == window_of[e.hi]:
            parent[find(e.lo)] = find(e.hi)
    clusters = defaultdict(list)
    for n in sorted(computed.nodes):
        clusters[find(n)].append(n)
    found = Counter(window_of[ns[0]] for ns in clusters.values())
    for h in sorted(expected):
        if found[h] != expected[h]:
            raise GroupingError(f"collar window of value {format_rational(h)} holds "
                                f"{found[h]} node clusters for {expected[h]} vertices")
    new_id = {}
    nodes = {}
    for i, root in enumerate(sorted(clusters, key=lambda r: (window_of[r], clusters[r][0]))):
        nodes[i] = ReebNode(window_of[root], True, None)
        for n in clusters[root]:
            new_id[n] = i
    edges = [ReebEdge(new_id[e.lo], new_id[e.hi], e.fiber, list(e.bands))
             for e in computed.edges if new_id[e.lo] != new_id[e.hi]]
    return ComputedReebGraph(nodes, edges)


def _signature(edges, node):
    below = Counter(e.fiber.k for e in edges if e.hi == node)
    above = Counter(e.fiber.k for e in edges if e.lo == node)
    return (tuple(sorted(below.items())), tuple(sorted(above.items())))


def isomorphic_labeled(a: LabeledGraph, b: ComputedReebGraph) -> MatchReport:
    """Value-, label- and adjacency-preserving bijection search."""
    diags = []
    if len(a.vertices) != len(b.nodes):
        diags.append(f"vertex count {len(a.vertices)} != node count {len(b.nodes)}")
    if len(a.edges) != len(b.edges):
        diags.append(f"edge count {len(a.edges)} != {len(b.edges)}")
    va = Counter(a.vertices.values())
    vb = Counter(n.value for n in b.nodes.values())
    if va != vb:
        missing = sorted(x for x in set(va) | set(vb) if va[x] != vb[x])
        diags.append("value multisets differ at " + ", ".join(format_rational(x) for x in missing))
    la = Counter(e.label for e in a.edges)
    lb = Counter(e.fiber.k for e in b.edges)
    if la != lb:
        diags.append(f"edge label counts differ: {dict(sorted(la.items()))} vs {dict(sorted(lb.items()))}")
    if diags:
        return MatchReport(False, {}, diags)

    a_edges = [ReebEdge(a.lower(e), a.upper(e), FiberType(e.label)) for e in a.edges]
    sig_a = {v: _signature(a_edges, v) for v in a.vertices}
    sig_b = {n: _signature(b.edges, n) for n in b.nodes}
    cands = {}
    for v in sorted(a.vertices):
        cands[v] = [n for n in sorted(b.nodes)
                    if b.nodes[n].value == a.vertices[v] and sig_b[n] == sig_a[v]]
        if not cands[v]:
            diags.append(f"vertex {v} (value {format_rational(a.vertices[v])}): no node with "
                         f"matching value and edge-label profile")
    if diags:
        return MatchReport(False, {}, diags)

    def multiset(edges):
        out = Counter()
        for e in edges:
            out[(min(e.lo, e.hi), max(e.lo, e.hi), e.fiber.k)] += 1
        return out

    ma, mb = multiset(a_edges), multiset(b.edges)
    nbr_a = defaultdict(Counter)
    for (x, y, k), c in ma.items():
        nbr_a[x][(y, k)] += c
        nbr_a[y][(x, k)] += c
    order = sorted(a.vertices, key=lambda v: (len(cands[v]), v))
    phi: Dict[int, int] = {}
    used = set()

    def consistent(v, n):
        for (w, k), c in nbr_a[v].items():
            if w in phi or w == v:
                m = n if w == v else phi[w]
                if mb[(min(n, m), max(n, m), k)] != c:
                    return False
        return True

    def search(i):
        if i == len(order):
            return True
        v = order[i]
        for n in cands[v]:
            if n in used or not consistent(v, n):
                continue
            phi[v] = n
            used.add(n)
            if search(i + 1):
                return True
            del phi[v]
            used.discard(n)
        return False

    if search(0):
        return MatchReport(True, dict(phi), [])
    return MatchReport(False, {}, ["no adjacency-preserving bijection exists"])


def verify_roundtrip(g: LabeledGraph, backend: Optional[str] = None) -> MatchReport:
    """Plan, synthesize, recompute and compare, collecting facts on the way."""
    info: Dict[str, object] = {}
    start = time.perf_counter()
    if g.mode != BINARY:
        return MatchReport(False, {}, ["round trips are defined for binary graphs only"], info)
    stage = "plan"
    try:
        p = make_plan(g)
        sim = simulate_fiber_transitions(p)
        if not sim.passed:
            return MatchReport(False, {}, [f"plan simulation failed at {sim.failed_model}: "
                                           f"{sim.reason}"], info)
        stage = "assemble"
        mesh = assemble(p)
        info["mesh_vertices"] = len(mesh.values)
        info["mesh_triangles"] = len(mesh.triangles)
        info["euler_characteristic"] = mesh.euler_characteristic()
        info["ideal_edges"] = len(mesh.ideal)
        info["ideal_boundary_paths"] = len(mesh.ideal_boundary_paths()) if mesh.ideal else 0
        info["orientable"] = mesh.is_orientable()
        stage = "reeb"
        computed = compute_reeb(mesh, backend)
        info["essential_nodes"] = len(computed.nodes)
        stage = "group"
        grouped = group_micro_levels(computed, p)
        info["grouping_applied"] = len(computed.nodes) != len(grouped.nodes)
        stage = "match"
        report = isomorphic_labeled(g, grouped)
    except Exception as exc:  # any stage error becomes a failing report
        info["seconds"] = round(time.perf_counter() - start, 4)
        return MatchReport(False, {}, [f"{stage}: {type(exc).__name__}: {exc}"], info)
    if not info["orientable"]:
        report.passed = False
        report.diagnostics.append("mesh is not orientable")
    if all(e.label == 0 for e in g.edges) and info["ideal_edges"]:
        report.passed = False
        report.diagnostics.append("all labels are 0 but the mesh has ideal edges")
    if report.passed:
        for v, n in report.mapping.items():
            if grouped.nodes[n].value != g.vertices[v]:
                report.passed = False
                report.diagnostics.append(f"vertex {v}: value mismatch")
    info["seconds"] = round(time.perf_counter() - start, 4)
    report.info = info
    return report


__all__ = ["GroupingError", "MatchReport", "group_micro_levels", "isomorphic_labeled",
           "verify_roundtrip", "computed_from_graph"]


def computed_from_graph(g: LabeledGraph) -> ComputedReebGraph:
    """View a labeled graph as a computed one (useful for self-comparison)."""
    nodes = {v: ReebNode(h, True, None) for v, h in g.vertices.items()}
    edges = [ReebEdge(g.lower(e), g.upper(e), FiberType(e.label)) for e in g.edges]
    return ComputedReebGraph(nodes, edges)
