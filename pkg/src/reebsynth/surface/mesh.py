"""Indexed triangle meshes carrying an exact PL scalar field."""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from ..graph_model import format_rational, parse_rational

Edge = Tuple[int, int]


class MeshError(ValueError):
    pass


def edge_key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass
class ScalarMesh:
    """Abstract triangulated surface with a rational value at every vertex.

    Edges used by a single triangle are the ideal edges: they mark where an
    open end of the surface has been truncated.
    """

    values: Dict[int, Fraction]
    triangles: List[Tuple[int, int, int]]
    ideal: Set[Edge] = field(default_factory=set)
    coords: Optional[Dict[int, Tuple[float, float, float]]] = None

    @classmethod
    def from_triangles(cls, values, triangles, coords=None) -> "ScalarMesh":
        mesh = cls(dict(values), [tuple(t) for t in triangles], set(), coords)
        mesh.ideal = mesh.boundary_edges()
        return mesh

    # -- combinatorics ----------------------------------------------------------
    def edge_triangles(self) -> Dict[Edge, List[int]]:
        inc: Dict[Edge, List[int]] = defaultdict(list)
        for ti, (a, b, c) in enumerate(self.triangles):
            inc[edge_key(a, b)].append(ti)
            inc[edge_key(b, c)].append(ti)
            inc[edge_key(c, a)].append(ti)
        return inc

    def edges(self) -> List[Edge]:
        return sorted(self.edge_triangles())

    def boundary_edges(self) -> Set[Edge]:
        return {e for e, ts in self.edge_triangles().items() if len(ts) == 1}

    def boundary_vertices(self) -> Set[int]:
        return {v for e in self.ideal for v in e}

    def euler_characteristic(self) -> int:
        used = {v for t in self.triangles for v in t}
        return len(used) - len(self.edge_triangles()) + len(self.triangles)

    def vertex_link_kinds(self) -> Dict[int, str]:
        """Classify each vertex link as ``disk`` (arc), ``circle`` or ``bad``."""
        links: Dict[int, List[Edge]] = defaultdict(list)
        for a, b, c in self.triangles:
            links[a].append((b, c))
            links[b].append((c, a))
            links[c].append((a, b))
        kinds = {}
        for v, segs in links.items():
            deg = defaultdict(int)
            adj = defaultdict(list)
            for x, y in segs:
                deg[x] += 1
                deg[y] += 1
                adj[x].append(y)
                adj[y].append(x)
            if any(d > 2 for d in deg.values()) or len(set(map(edge_key, *zip(*segs)))) != len(segs):
                kinds[v] = "bad"
                continue
            start = next(iter(adj))
            seen, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(adj):
                kinds[v] = "bad"
            elif all(d == 2 for d in deg.values()):
                kinds[v] = "circle"
            else:
                kinds[v] = "disk"
        return kinds

    def orientation(self) -> Optional[List[int]]:
        """Consistent orientation signs per triangle, or ``None`` if impossible.

        Breadth-first propagation across interior edges: two triangles sharing
        an edge are coherent when they traverse it in opposite directions.
        """
        inc = self.edge_triangles()
        sign = [0] * len(self.triangles)

        def traverses(ti, a, b):
            t = self.triangles[ti]
            for i in range(3):
                if t[i] == a and t[(i + 1) % 3] == b:
                    return 1
                if t[i] == b and t[(i + 1) % 3] == a:
                    return -1
            raise MeshError("edge not in triangle")

        for seed in range(len(self.triangles)):
            if sign[seed]:
                continue
            sign[seed] = 1
            queue = deque([seed])
            while queue:
                ti = queue.popleft()
                a, b, c = self.triangles[ti]
                for x, y in ((a, b), (b, c), (c, a)):
                    for tj in inc[edge_key(x, y)]:
                        if tj == ti:
                            continue
                        want = -sign[ti] * traverses(ti, x, y) * traverses(tj, x, y)
                        if sign[tj] == 0:
                            sign[tj] = want
                            queue.append(tj)
                        elif sign[tj] != want:
                            return None
        return sign

    def is_orientable(self) -> bool:
        return self.orientation() is not None

    def components(self) -> int:
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, c in self.triangles:
            parent[find(b)] = find(a)
            parent[find(c)] = find(a)
        return len({find(v) for v in parent})

    def invariant_violations(self, open_edges=frozenset()) -> List[str]:
        """Human-readable list of broken invariants; empty when valid.

        ``open_edges`` are boundary edges that are neither ideal nor errors,
        such as the gluing rows of a standalone patch.
        """
        problems = []
        inc = self.edge_triangles()
        for e, ts in inc.items():
            if len(ts) > 2:
                problems.append(f"edge {e} lies in {len(ts)} triangles")
        boundary = {e for e, ts in inc.items() if len(ts) == 1}
        if boundary != set(self.ideal) | set(open_edges):
            problems.append("ideal edges differ from single-triangle edges")
        for ti, (a, b, c) in enumerate(self.triangles):
            if len({a, b, c}) < 3:
                problems.append(f"triangle {ti} is degenerate")
            elif self.values[a] == self.values[b] == self.values[c]:
                problems.append(f"triangle {ti} is flat")
        seen = set()
        for t in self.triangles:
            key = tuple(sorted(t))
            if key in seen:
                problems.append(f"duplicate triangle {key}")
            seen.add(key)
        bad = [v for v, k in self.vertex_link_kinds().items() if k == "bad"]
        if bad:
            problems.append(f"non-manifold vertex links at {sorted(bad)[:10]}")
        if not problems and not self.is_orientable():
            problems.append("surface is not orientable")
        return problems

    def ideal_boundary_paths(self) -> List[List[int]]:
        """Maximal value-monotone chains of ideal edges."""
        adj = defaultdict(list)
        for a, b in self.ideal:
            adj[a].append(b)
            adj[b].append(a)
        if any(len(n) > 2 for n in adj.values()):
            raise MeshError("ideal edges branch at a vertex")
        chains, seen = [], set()
        ends = sorted(v for v, n in adj.items() if len(n) == 1)
        for start in ends + sorted(adj):
            if start in seen:
                continue
            chain, prev, cur = [start], None, start
            seen.add(start)
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt or nxt[0] == start:
                    break
                prev, cur = cur, nxt[0]
                chain.append(cur)
                seen.add(cur)
            cyclic = len(adj[start]) == 2
            chains.append((chain, cyclic))
        paths = []
        for chain, cyclic in chains:
            paths += _monotone_pieces(chain, cyclic, self.values)
        return paths

    # -- derived meshes ----------------------------------------------------------
    def barycentric_refinement(self) -> "ScalarMesh":
        values = dict(self.values)
        nxt = max(values) + 1
        mids: Dict[Edge, int] = {}

        def mid(a, b):
            nonlocal nxt
            key = edge_key(a, b)
            if key not in mids:
                mids[key] = nxt
                values[nxt] = (values[a] + values[b]) / 2
                nxt += 1
            return mids[key]

        tris = []
        for a, b, c in self.triangles:
            g = nxt
            values[g] = (values[a] + values[b] + values[c]) / 3
            nxt += 1
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            tris += [(a, ab, g), (ab, b, g), (b, bc, g), (bc, c, g), (c, ca, g), (ca, a, g)]
        return ScalarMesh.from_triangles(values, tris)

    def layout(self) -> Dict[int, Tuple[float, float, float]]:
        """Per-level circular layout; visualization only."""
        if self.coords:
            return self.coords
        by_level = defaultdict(list)
        for v, f in self.values.items():
            by_level[f].append(v)
        coords = {}
        for f, vs in by_level.items():
            vs.sort()
            n = len(vs)
            for i, v in enumerate(vs):
                ang = 2 * math.pi * i / n
                coords[v] = (math.cos(ang), math.sin(ang), float(f))
        return coords


def _monotone_pieces(chain, cyclic, f):
    """Split a vertex chain where the value changes direction."""
    n = len(chain)
    seq = chain + [chain[0]] if cyclic else list(chain)

    def step(i):
        return (f[seq[i + 1]] > f[seq[i]]) - (f[seq[i + 1]] < f[seq[i]])

    steps = [step(i) for i in range(len(seq) - 1)]
    if cyclic:
        nz = [i for i in range(n) if steps[i]]
        turns = [i for k, i in enumerate(nz) if steps[nz[k - 1]] != steps[i]]
        if not turns:
            return [seq]
        r = turns[0]
        seq = chain[r:] + chain[:r] + [chain[r]]
        steps = steps[r:] + steps[:r]
    pieces, cur, direction = [], [seq[0]], 0
    for i, s in enumerate(steps):
        if s and direction and s != direction:
            pieces.append(cur)
            cur = [seq[i]]
        if s:
            direction = s
        cur.append(seq[i + 1])
    pieces.append(cur)
    return pieces


# -- text formats -----------------------------------------------------------------

def write_rmesh(mesh: ScalarMesh, with_coords: bool = False) -> str:
    lines = []
    coords = mesh.layout() if with_coords else None
    for v in sorted(mesh.values):
        line = f"mv {v} {format_rational(mesh.values[v])}"
        if coords is not None:
            x, y, z = coords[v]
            line += f" {x:.6f} {y:.6f} {z:.6f}"
        lines.append(line)
    for a, b, c in mesh.triangles:
        lines.append(f"mt {a} {b} {c}")
    for a, b in sorted(mesh.ideal):
        lines.append(f"ideal {a} {b}")
    return "\n".join(lines) + "\n"


def read_rmesh(text: str) -> ScalarMesh:
    values: Dict[int, Fraction] = {}
    coords: Dict[int, Tuple[float, float, float]] = {}
    tris: List[Tuple[int, int, int]] = []
    ideal: Set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        try:
            if tokens[0] == "mv" and len(tokens) in (3, 6):
                vid = int(tokens[1])
                if vid in values:
                    raise MeshError(f"line {lineno}: duplicate vertex {vid}")
                values[vid] = parse_rational(tokens[2])
                if len(tokens) == 6:
                    coords[vid] = tuple(float(t) for t in tokens[3:])
            elif tokens[0] == "mt" and len(tokens) == 4:
                tris.append(tuple(int(t) for t in tokens[1:]))
            elif tokens[0] == "ideal" and len(tokens) == 3:
                ideal.add(edge_key(int(tokens[1]), int(tokens[2])))
            else:
                raise MeshError(f"line {lineno}: unrecognized record {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, MeshError):
                raise
            raise MeshError(f"line {lineno}: {exc}") from None
    for t in tris:
        for v in t:
            if v not in values:
                raise MeshError(f"triangle {t} references unknown vertex {v}")
    return ScalarMesh(values, tris, ideal, coords or None)


def write_off(mesh: ScalarMesh) -> str:
    coords = mesh.layout()
    order = sorted(mesh.values)
    index = {v: i for i, v in enumerate(order)}
    lines = ["OFF", f"{len(order)} {len(mesh.triangles)} 0"]
    for v in order:
        x, y, z = coords[v]
        lines.append(f"{x:.6f} {y:.6f} {z:.6f}")
    for a, b, c in mesh.triangles:
        lines.append(f"3 {index[a]} {index[b]} {index[c]}")
    return "\n".join(lines) + "\n"
