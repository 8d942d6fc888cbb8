"""Patches built around a critical level complex.

A patch is described by a graph K sitting at the critical value plus a set
of walks on K.  Each walk is the limit of one fiber as the level approaches
K from one side.  Walks become rows of mesh vertices half a collar away from
K, and every row is zipped to a fixed-size interface row one collar away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..planner import CIRCLE, LINE, FiberType
from .mesh import MeshError, ScalarMesh

CIRCLE_SIZE = 12
LINE_SIZE = 13

Walk = Tuple[Sequence[int], bool]


@dataclass
class Interface:
    fiber: FiberType
    row: List[int]
    cyclic: bool
    level: Fraction


@dataclass
class Patch:
    mesh: ScalarMesh
    level: Fraction
    collar: Fraction
    lower: List[Interface]
    upper: List[Interface]
    critical: List[int] = field(default_factory=list)
    identified_pairs: int = 0

    def shifted(self, offset: int) -> "Patch":
        """Renumber every vertex id by ``offset``."""
        m = self.mesh
        mesh = ScalarMesh(
            {v + offset: f for v, f in m.values.items()},
            [(a + offset, b + offset, c + offset) for a, b, c in m.triangles],
            {(a + offset, b + offset) for a, b in m.ideal},
        )

        def move(itf):
            return Interface(itf.fiber, [v + offset for v in itf.row], itf.cyclic, itf.level)

        return Patch(mesh, self.level, self.collar,
                     [move(i) for i in self.lower], [move(i) for i in self.upper],
                     [v + offset for v in self.critical], self.identified_pairs)

    def interface_edges(self):
        out = set()
        for itf in self.lower + self.upper:
            row = itf.row
            pairs = zip(row, row[1:] + row[:1]) if itf.cyclic else zip(row, row[1:])
            out.update((min(a, b), max(a, b)) for a, b in pairs)
        return out

    def violations(self) -> List[str]:
        """Mesh invariants, with interface rows counted as open seams."""
        return self.mesh.invariant_violations(open_edges=self.interface_edges())

    def k_complex(self) -> Tuple[List[int], List[Tuple[int, int]]]:
        """Vertices and mesh edges lying exactly on the critical level."""
        ks = set(self.critical)
        edges = sorted({e for e in self.mesh.edge_triangles() if e[0] in ks and e[1] in ks})
        return sorted(ks), edges


def zipper(bottom: Sequence[int], top: Sequence[int], cyclic: bool):
    """Triangulate the strip between two rows; bottom is traversed forward."""
    nb, nt = len(bottom), len(top)
    if cyclic:
        sb, st = nb, nt

        def b(i):
            return bottom[i % nb]

        def t(j):
            return top[j % nt]
    else:
        sb, st = nb - 1, nt - 1
        b, t = bottom.__getitem__, top.__getitem__
    tris = []
    i = j = 0
    while i < sb or j < st:
        if j == st or (i < sb and (2 * i + 1) * st <= (2 * j + 1) * sb):
            tris.append((b(i), b(i + 1), t(j)))
            i += 1
        else:
            tris.append((b(i), t(j + 1), t(j)))
            j += 1
    return tris


def _strip(row: Sequence[int], walk: Sequence[int], cyclic: bool, role: str):
    """Triangles between a walk row and the level complex it projects to."""
    n = len(row)
    tris = []
    for i in range(n if cyclic else n - 1):
        w0, w1 = row[i], row[(i + 1) % n]
        k0, k1 = walk[i], walk[(i + 1) % n]
        if role == "lower":
            if k0 == k1:
                tris.append((w0, w1, k0))
            else:
                tris += [(w0, w1, k1), (w0, k1, k0)]
        else:
            if k0 == k1:
                tris.append((k0, w1, w0))
            else:
                tris += [(k0, k1, w1), (k0, w1, w0)]
    return tris


def build_patch(k_size: int, lower_walks: List[Walk], upper_walks: List[Walk],
                level: Fraction, collar: Fraction, lower_side: int = -1,
                upper_side: int = 1, identified_pairs: int = 0) -> Patch:
    """Thicken the level complex K = {0..k_size-1} into a patch.

    ``lower_walks`` are fibers arriving from below and ``upper_walks`` fibers
    leaving above.  The ``*_side`` arguments place each group's rows on a
    geometric side; squared extrema put both groups on the same side.
    """
    values: Dict[int, Fraction] = {v: level for v in range(k_size)}
    tris = []
    nxt = k_size
    below: List[Interface] = []
    above: List[Interface] = []
    half = collar / 2
    for role, walks, side in (("lower", lower_walks, lower_side),
                              ("upper", upper_walks, upper_side)):
        for walk, cyclic in walks:
            walk = list(walk)
            if any(not 0 <= k < k_size for k in walk):
                raise MeshError("walk leaves the level complex")
            row = list(range(nxt, nxt + len(walk)))
            nxt += len(walk)
            for v in row:
                values[v] = level + side * half
            size = CIRCLE_SIZE if cyclic else LINE_SIZE
            iface = list(range(nxt, nxt + size))
            nxt += size
            for v in iface:
                values[v] = level + side * collar
            tris += _strip(row, walk, cyclic, role)
            if role == "lower":
                tris += zipper(iface, row, cyclic)
            else:
                tris += zipper(row, iface, cyclic)
            itf = Interface(CIRCLE if cyclic else LINE, iface, cyclic, level + side * collar)
            (below if side < 0 else above).append(itf)
    patch = Patch(ScalarMesh.from_triangles(values, tris), level, collar, below, above,
                  list(range(k_size)), identified_pairs)
    patch.mesh.ideal -= patch.interface_edges()
    return patch


def mirror(patch: Patch) -> Patch:
    """Image under f -> 2*level - f; lower and upper interfaces swap."""
    t = patch.level
    m = patch.mesh
    mesh = ScalarMesh({v: 2 * t - f for v, f in m.values.items()}, list(m.triangles), set(m.ideal))

    def flip(itf):
        return Interface(itf.fiber, itf.row, itf.cyclic, 2 * t - itf.level)

    return Patch(mesh, t, patch.collar, [flip(i) for i in patch.upper],
                 [flip(i) for i in patch.lower], list(patch.critical), patch.identified_pairs)


# -- critical fibers of saddles -----------------------------------------------------

class _Z:
    """Disjoint paths and cycles with some points identified in pairs."""

    def __init__(self):
        self.comps: List[Tuple[List[int], bool]] = []
        self.partner: Dict[int, int] = {}
        self.n = 0

    def add(self, specials: int, cyclic: bool, gaps: Sequence[int] = ()) -> List[int]:
        """Add a component; returns the ids of its special points in order."""
        pts, marks = [], []
        if not cyclic:
            pts.append(self._new())
        for s in range(specials):
            for _ in range(gaps[s] if s < len(gaps) else 2):
                pts.append(self._new())
            p = self._new()
            pts.append(p)
            marks.append(p)
        for _ in range(2 if specials else 4):
            pts.append(self._new())
        if not cyclic:
            pts.append(self._new())
        self.comps.append((pts, cyclic))
        return marks

    def _new(self):
        self.n += 1
        return self.n - 1

    def pair(self, p, q):
        self.partner[p] = q
        self.partner[q] = p

    def resolve(self):
        """Return (K size, lower walks, upper walks) after the swap resolution."""
        kid: Dict[int, int] = {}
        count = 0
        for p in range(self.n):
            q = self.partner.get(p, p)
            if q < p:
                kid[p] = kid[q]
            else:
                kid[p] = count
                count += 1
        succ = {}
        for pts, cyclic in self.comps:
            for i, p in enumerate(pts):
                if cyclic or i + 1 < len(pts):
                    succ[p] = pts[(i + 1) % len(pts)]
        lower = [([kid[p] for p in pts], cyc) for pts, cyc in self.comps]
        used = set()
        upper_paths, upper_cycles = [], []
        for pts, cyclic in self.comps:
            if cyclic:
                continue
            owner, walk = pts[0], [kid[pts[0]]]
            while owner in succ:
                used.add(owner)
                p = succ[owner]
                walk.append(kid[p])
                owner = self.partner.get(p, p)
            upper_paths.append((walk, False))
        for start in sorted(succ):
            if start in used:
                continue
            owner, walk = start, []
            while True:
                used.add(owner)
                p = succ[owner]
                walk.append(kid[p])
                owner = self.partner.get(p, p)
                if owner == start:
                    break
            upper_cycles.append((walk, True))
        return count, lower, upper_paths + upper_cycles


def saddle_complex(a: int, b: int, c: int):
    """Critical fiber of a saddle: (K size, lower walks, upper walks, pairs)."""
    z = _Z()
    if a > 0:
        # path specials: P0 carries the crossing with P1, the circle merges and the splits
        path_marks = []
        for i in range(a):
            if i == 0:
                n0 = (1 if a > 1 else 0) + b + 2 * c
                gaps = [2] * ((1 if a > 1 else 0) + b) + [2, 3] * c
                path_marks.append(z.add(n0, False, gaps))
            else:
                path_marks.append(z.add(2 if i < a - 1 else 1, False))
        for i in range(a - 1):
            left = path_marks[i][0] if i == 0 else path_marks[i][1]
            z.pair(left, path_marks[i + 1][0])
        base = 1 if a > 1 else 0
        for j in range(b):
            (s,) = z.add(1, True)
            z.pair(s, path_marks[0][base + j])
        for j in range(c):
            x, y = path_marks[0][base + b + 2 * j], path_marks[0][base + b + 2 * j + 1]
            z.pair(x, y)
    else:
        if b < 1 or c < 1:
            raise MeshError(f"saddle ({a},{b},{c}) has an empty side")
        if (b, c) == (1, 1):
            x1, x2, x3, x4 = z.add(4, True)
            z.pair(x1, x3)
            z.pair(x2, x4)
        else:
            marks = z.add((b - 1) + 2 * (c - 1), True, [2] * (b - 1) + [2, 3] * (c - 1))
            for j in range(1, b):
                (s,) = z.add(1, True)
                z.pair(s, marks[j - 1])
            for j in range(c - 1):
                z.pair(marks[b - 1 + 2 * j], marks[b - 1 + 2 * j + 1])
    k_size, lower, upper = z.resolve()
    pairs = len(z.partner) // 2
    paths = sum(1 for _, cyc in upper if not cyc)
    if paths != a or len(upper) - paths != c:
        raise MeshError(f"saddle ({a},{b},{c}) resolved to {paths} lines and "
                        f"{len(upper) - paths} circles")
    return k_size, lower, upper, pairs
