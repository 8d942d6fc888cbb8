"""Glue per-model patches along tubes into one surface."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .. import planner as P
from ..planner import CIRCLE, LINE, ConstructionPlan, FiberType, LocalModel
from .critical import Patch, zipper
from .mesh import MeshError, ScalarMesh
from .templates import (synth_cap, synth_line_birth, synth_line_cut, synth_line_transit,
                        synth_open_cap, synth_saddle, synth_squared_extremum)


class AssemblyError(MeshError):
    pass


def synth_model(m: LocalModel) -> Patch:
    """Instantiate the template for one local model."""
    t, w = m.level, m.collar
    kind = m.kind
    if kind == P.SADDLE:
        patch = synth_saddle(m.param("a"), m.param("b"), m.param("c"), t, w)
    elif kind == P.CAP:
        patch = synth_cap(t, w, m.sign)
    elif kind == P.OPEN_CAP:
        patch = synth_open_cap(t, w, m.sign)
    elif kind == P.SQUARED:
        patch = synth_squared_extremum(m.param("a"), m.param("b"), m.param("c"), t, w, m.sign)
    elif kind == P.LINE_TRANSIT:
        patch = synth_line_transit(t, w)
    elif kind in (P.BIRTH, P.DEATH):
        host = FiberType(m.param("host"))
        patch = synth_line_birth(t, w, "birth" if kind == P.BIRTH else "death", host)
    elif kind in (P.CUT, P.CLOSE):
        if m.param("host") != 0:
            raise AssemblyError(f"{m.id}: only circle/line cuts have surface templates")
        patch = synth_line_cut(t, w, "cut" if kind == P.CUT else "close")
    else:
        raise AssemblyError(f"{m.id}: no surface template for model kind {kind!r}")
    for side, slots, itfs in (("lower", m.lower, patch.lower), ("upper", m.upper, patch.upper)):
        got = [i.fiber for i in itfs]
        want = [s.fiber for s in slots]
        if got != want:
            raise AssemblyError(f"{m.id}: {side} interfaces {got} do not match slots {want}")
    return patch


def _orient(patch: Patch) -> Patch:
    signs = patch.mesh.orientation()
    if signs is None:
        raise AssemblyError("patch is not orientable")
    if any(s < 0 for s in signs):
        patch.mesh.triangles = [t if s > 0 else (t[0], t[2], t[1])
                                for t, s in zip(patch.mesh.triangles, signs)]
    return patch


def _traverses_forward(tris_by_edge, row) -> bool:
    a, b = row[0], row[1]
    for tri in tris_by_edge[(min(a, b), max(a, b))]:
        for i in range(3):
            if tri[i] == a and tri[(i + 1) % 3] == b:
                return True
            if tri[i] == b and tri[(i + 1) % 3] == a:
                return False
    raise AssemblyError("interface row is not on the patch boundary")


@dataclass
class Assembly:
    mesh: ScalarMesh
    patches: Dict[str, Patch]
    tube_triangles: Dict[str, List[Tuple[int, int, int]]]


def assemble_detailed(plan: ConstructionPlan) -> Assembly:
    if plan.dimension != 1:
        raise AssemblyError("only one-dimensional plans can be realized as surfaces")
    patches: Dict[str, Patch] = {}
    values = {}
    tris: List[Tuple[int, int, int]] = []
    offset = 0
    for m in plan.models:
        patch = _orient(synth_model(m)).shifted(offset)
        offset = max(patch.mesh.values) + 1
        patches[m.id] = patch
        values.update(patch.mesh.values)
        tris += patch.mesh.triangles

    by_edge: Dict[Tuple[int, int], List[Tuple[int, int, int]]] = {}
    for tri in tris:
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            by_edge.setdefault((min(a, b), max(a, b)), []).append(tri)

    tube_tris = {}
    for tube in plan.tubes:
        lo_model, hi_model = plan.model(tube.lower_model), plan.model(tube.upper_model)
        lo_idx = [i for i, s in enumerate(lo_model.upper) if s.tube == tube.id]
        hi_idx = [i for i, s in enumerate(hi_model.lower) if s.tube == tube.id]
        if len(lo_idx) != 1 or len(hi_idx) != 1:
            raise AssemblyError(f"tube {tube.id}: ambiguous or missing end slots")
        bottom = patches[lo_model.id].upper[lo_idx[0]]
        top = patches[hi_model.id].lower[hi_idx[0]]
        if bottom.fiber != tube.fiber or top.fiber != tube.fiber:
            raise AssemblyError(f"tube {tube.id}: fiber mismatch at its ends")
        if (bottom.level, top.level) != (tube.lo, tube.hi) or not bottom.level < top.level:
            raise AssemblyError(f"tube {tube.id}: end levels {bottom.level}, {top.level} "
                                f"disagree with [{tube.lo}, {tube.hi}]")
        # the strip must run along each shared row against the patch's own direction
        b_row = bottom.row[::-1] if _traverses_forward(by_edge, bottom.row) else list(bottom.row)
        t_row = list(top.row) if _traverses_forward(by_edge, top.row) else top.row[::-1]
        strip = zipper(b_row, t_row, bottom.cyclic)
        tube_tris[tube.id] = strip
        tris += strip

    mesh = ScalarMesh.from_triangles(values, tris)
    problems = mesh.invariant_violations()
    if problems:
        raise AssemblyError("assembled mesh breaks invariants: " + "; ".join(problems[:5]))
    return Assembly(mesh, patches, tube_tris)


def assemble(plan: ConstructionPlan) -> ScalarMesh:
    return assemble_detailed(plan).mesh


__all__ = ["assemble", "assemble_detailed", "synth_model", "Assembly", "AssemblyError",
           "CIRCLE", "LINE"]
