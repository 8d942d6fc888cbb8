"""Reeb graphs of PL scalar fields on triangulated surfaces."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..graph_model import format_rational
from ..planner import CIRCLE, LINE, FiberType
from ..surface.mesh import ScalarMesh, edge_key
from . import kernel


class ReebError(ValueError):
    pass


IDEAL = "ideal"
FOLD = "fold"


@dataclass
class LevelComponent:
    value: Fraction
    vertices: List[int]
    crossing_edges: List[Tuple[int, int]]
    segments: int
    terminals: List[Tuple[object, str]]
    branch_points: List[object]

    @property
    def is_point(self) -> bool:
        return self.segments == 0

    def is_cycle(self) -> bool:
        return not self.is_point and not self.terminals and not self.branch_points

    def is_ideal_path(self) -> bool:
        kinds = [k for _, k in self.terminals]
        return (not self.branch_points and len(kinds) == 2 and all(k == IDEAL for k in kinds))

    def fiber_type(self) -> Optional[FiberType]:
        if self.is_cycle():
            return CIRCLE
        if self.is_ideal_path():
            return LINE
        return None


@dataclass
class ReebNode:
    value: Fraction
    essential: bool
    component: Optional[LevelComponent] = None


@dataclass
class ReebEdge:
    lo: int
    hi: int
    fiber: FiberType
    bands: List[int] = field(default_factory=list)


@dataclass
class ComputedReebGraph:
    nodes: Dict[int, ReebNode]
    edges: List[ReebEdge]

    def essential_nodes(self) -> List[int]:
        return sorted(n for n, node in self.nodes.items() if node.essential)

    def degree(self, n: int) -> int:
        return sum((e.lo == n) + (e.hi == n) for e in self.edges)

    def to_rgl(self) -> str:
        lines = ["mode binary"]
        for n in sorted(self.nodes):
            node = self.nodes[n]
            tag = "  # essential" if node.essential else "  # inessential"
            lines.append(f"v {n} {format_rational(node.value)}{tag}")
        for i, e in enumerate(self.edges, start=1):
            lines.append(f"e {i} {e.lo} {e.hi} {e.fiber.k}")
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        out = ["graph reeb {"]
        for n in sorted(self.nodes):
            node = self.nodes[n]
            shape = "circle" if node.essential else "point"
            out.append(f'  n{n} [label="{n}: {format_rational(node.value)}", shape={shape}];')
        for e in self.edges:
            style = "solid" if e.fiber == CIRCLE else "dashed"
            out.append(f'  n{e.lo} -- n{e.hi} [label="{e.fiber.k}", style={style}];')
        out.append("}")
        return "\n".join(out) + "\n"


# -- single level ------------------------------------------------------------------

def level_complex(m: ScalarMesh, t: Fraction) -> List[LevelComponent]:
    """Connected components of {f = t}, computed exactly."""
    t = Fraction(t)
    f = m.values
    boundary_v = m.boundary_vertices()
    segs = set()
    items = set()
    for a, b, c in m.triangles:
        found = [("v", x) for x in (a, b, c) if f[x] == t]
        for x, y in ((a, b), (b, c), (c, a)):
            if min(f[x], f[y]) < t < max(f[x], f[y]):
                found.append(("e", edge_key(x, y)))
        items.update(found)
        if len(found) == 2:
            segs.add(tuple(sorted(found)))
    return _components(items, segs, t, boundary_v, m.ideal)


def _components(items, segs, t, boundary_v, ideal) -> List[LevelComponent]:
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    valence = defaultdict(int)
    for x, y in segs:
        valence[x] += 1
        valence[y] += 1
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    groups = defaultdict(list)
    for x in sorted(items):
        groups[find(x)].append(x)
    nseg = defaultdict(int)
    for x, _ in segs:
        nseg[find(x)] += 1
    comps = []
    for root, members in groups.items():
        comps.append(_describe(t, members, valence, nseg[root], boundary_v, ideal))
    return comps


def _describe(t, members, valence, nseg, boundary_v, ideal) -> LevelComponent:
    terminals, branches = [], []
    for x in members:
        val = valence[x]
        if val == 1:
            on_ideal = (x[1] in boundary_v) if x[0] == "v" else (x[1] in ideal)
            terminals.append((x, IDEAL if on_ideal else FOLD))
        elif val >= 3:
            branches.append(x)
    return LevelComponent(
        value=t,
        vertices=[x[1] for x in members if x[0] == "v"],
        crossing_edges=[x[1] for x in members if x[0] == "e"],
        segments=nseg,
        terminals=terminals,
        branch_points=branches,
    )


# -- full sweep --------------------------------------------------------------------

def build_augmented_reeb(m: ScalarMesh, backend: Optional[str] = None) -> ComputedReebGraph:
    """Reeb graph with a node for every level component at every vertex value."""
    sweep = kernel.get(backend)
    used = sorted({v for tri in m.triangles for v in tri})
    if not used:
        raise ReebError("mesh has no triangles")
    vid = {v: i for i, v in enumerate(used)}
    levels = sorted({m.values[v] for v in used})
    rank_of = {val: r for r, val in enumerate(levels)}
    nv = len(used)
    drank = np.asarray([2 * rank_of[m.values[v]] for v in used], dtype=np.int64)

    edge_ids: Dict[Tuple[int, int], int] = {}
    edge_list: List[Tuple[int, int]] = []
    tv = np.empty((len(m.triangles), 3), dtype=np.int64)
    te = np.empty((len(m.triangles), 3), dtype=np.int64)
    for i, (a, b, c) in enumerate(m.triangles):
        ia, ib, ic = vid[a], vid[b], vid[c]
        tv[i] = (ia, ib, ic)
        for k, (x, y) in enumerate(((ia, ib), (ib, ic), (ic, ia))):
            key = (x, y) if x < y else (y, x)
            eid = edge_ids.get(key)
            if eid is None:
                eid = edge_ids[key] = len(edge_list)
                edge_list.append(key)
            te[i, k] = eid
    ni = nv + len(edge_list)

    seg_l, seg_a, seg_b, pt_l, pt_i = sweep.level_segments(tv, te, drank, nv)
    segs = np.unique(np.stack([seg_l, seg_a, seg_b], axis=1), axis=0) if len(seg_l) else \
        np.empty((0, 3), dtype=np.int64)
    keys = np.concatenate([segs[:, 0] * ni + segs[:, 1], segs[:, 0] * ni + segs[:, 2],
                           pt_l * ni + pt_i])
    occ, inverse = np.unique(keys, return_inverse=True)
    ns = len(segs)
    labels = sweep.union_find_labels(len(occ), inverse[:ns], inverse[ns:2 * ns])
    valence = np.bincount(inverse[:2 * ns], minlength=len(occ))
    occ_level = occ // ni
    occ_item = occ % ni
    seg_root = labels[inverse[:ns]]

    boundary = {(vid[a], vid[b]) if vid[a] < vid[b] else (vid[b], vid[a]) for a, b in m.ideal}
    boundary_v = {x for e in boundary for x in e}
    boundary_eids = {edge_ids[e] for e in boundary if e in edge_ids}

    # group occurrences into components
    comp_members: Dict[int, List[int]] = defaultdict(list)
    for idx, root in enumerate(labels.tolist()):
        comp_members[root].append(idx)
    comp_segs = defaultdict(int)
    for root in seg_root.tolist():
        comp_segs[root] += 1

    def level_value(lev):
        if lev % 2 == 0:
            return levels[lev // 2]
        return (levels[lev // 2] + levels[lev // 2 + 1]) / 2

    def describe(root):
        members = comp_members[root]
        lev = int(occ_level[members[0]])
        verts, crossing, terminals, branches = [], [], [], []
        for idx in members:
            item = int(occ_item[idx])
            if item < nv:
                key = ("v", used[item])
                on_ideal = item in boundary_v
                verts.append(used[item])
            else:
                x, y = edge_list[item - nv]
                key = ("e", edge_key(used[x], used[y]))
                on_ideal = (item - nv) in boundary_eids
                crossing.append(key[1])
            val = int(valence[idx])
            if val == 1:
                terminals.append((key, IDEAL if on_ideal else FOLD))
            elif val >= 3:
                branches.append(key)
        return LevelComponent(level_value(lev), verts, crossing, comp_segs[root],
                              terminals, branches)

    node_of: Dict[int, int] = {}
    band_of: Dict[int, int] = {}
    nodes: Dict[int, ReebNode] = {}
    bands: Dict[int, LevelComponent] = {}
    for root in sorted(comp_members, key=lambda r: (int(occ_level[r]), r)):
        lev = int(occ_level[root])
        comp = describe(root)
        if lev % 2 == 0:
            node_of[root] = len(nodes)
            nodes[len(nodes)] = ReebNode(comp.value, True, comp)
        else:
            band_of[root] = len(bands)
            bands[len(bands)] = comp

    def occurrence(lev, item):
        key = lev * ni + item
        pos = int(np.searchsorted(occ, key))
        if pos >= len(occ) or occ[pos] != key:
            raise ReebError("band end does not touch a level component")
        return pos

    edges: List[ReebEdge] = []
    band_roots = sorted(band_of, key=lambda r: band_of[r])
    for root in band_roots:
        comp = bands[band_of[root]]
        fiber = comp.fiber_type()
        if fiber is None:
            raise ReebError(f"band cross-section at {comp.value} is neither a circle nor "
                            f"a line with two ideal ends ({len(comp.terminals)} terminals, "
                            f"{len(comp.branch_points)} branch points)")
        lev = int(occ_level[root])
        ends = {"lo": set(), "hi": set()}
        for idx in comp_members[root]:
            e = int(occ_item[idx]) - nv
            x, y = edge_list[e]
            p, q = (x, y) if drank[x] < drank[y] else (y, x)
            down = p if drank[p] == lev - 1 else nv + e
            up = q if drank[q] == lev + 1 else nv + e
            ends["lo"].add(node_of[int(labels[occurrence(lev - 1, down)])])
            ends["hi"].add(node_of[int(labels[occurrence(lev + 1, up)])])
        if len(ends["lo"]) != 1 or len(ends["hi"]) != 1:
            raise ReebError(f"band at {comp.value} attaches to several level components")
        edges.append(ReebEdge(ends["lo"].pop(), ends["hi"].pop(), fiber, [band_of[root]]))
    return ComputedReebGraph(nodes, edges)


def smooth_inessential(g: ComputedReebGraph) -> ComputedReebGraph:
    """Drop regular nodes and splice their two bands together."""
    below = defaultdict(list)
    above = defaultdict(list)
    for i, e in enumerate(g.edges):
        above[e.lo].append(i)
        below[e.hi].append(i)
    alive = {i: ReebEdge(e.lo, e.hi, e.fiber, list(e.bands)) for i, e in enumerate(g.edges)}
    nodes = {}
    for n in sorted(g.nodes, key=lambda n: g.nodes[n].value):
        node = g.nodes[n]
        dn, up = below[n], above[n]
        regular = False
        if len(dn) == 1 and len(up) == 1:
            ed, eu = alive[dn[0]], alive[up[0]]
            if ed.fiber == eu.fiber and node.component is not None \
                    and node.component.fiber_type() == ed.fiber:
                regular = True
        if regular:
            ed, eu = alive[dn[0]], alive.pop(up[0])
            ed.hi = eu.hi
            ed.bands += eu.bands
            # the spliced edge now ends where ``eu`` ended
            below[eu.hi] = [dn[0] if j == up[0] else j for j in below[eu.hi]]
        else:
            nodes[n] = ReebNode(node.value, True, node.component)
    edges = [alive[i] for i in sorted(alive)]
    return ComputedReebGraph(nodes, edges)


def compute_reeb(m: ScalarMesh, backend: Optional[str] = None) -> ComputedReebGraph:
    return smooth_inessential(build_augmented_reeb(m, backend))
