"""Construction plans: local models at vertices, tubes along edges.

A plan is symbolic and dimension-parametric.  Fibers are spheres with ``k``
disks removed; in the surface case (``n = 1``) ``k = 0`` is a circle and
``k = 1`` a line.  Each local model has lower and upper interface slots, every
slot is glued to exactly one tube, and :func:`simulate_fiber_transitions`
replays the plan as a sweep over multisets of live fibers.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graph_model import (
    BINARY, GENERAL, FOLD_COMPOSITION, MORSE, MORSE_BOTT, LabeledGraph,
    RouteTag, R_CAP, R_SADDLE, R_SQUARED, R_CASE_A, R_CASE_B, R_CASE_C, R_CASE_D,
    R_OPEN_CAP, R_LINE_SQUARED, check_general_conditions, classify_route,
    format_rational, min_value_gap, split_circles,
)

FORBIDDEN_TRIPLES = frozenset({(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)})
SQUARED_SPECIALS = frozenset({(1, 0, 0), (0, 1, 1)})


class PlanError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FiberType:
    """Sphere with ``k`` open disks removed (circle/line when ``n = 1``)."""

    k: int

    def name(self, n: int = 1) -> str:
        if n == 1 and self.k in (0, 1):
            return "Circle" if self.k == 0 else "Line"
        return f"S^{n}-{self.k}D"

    def __str__(self) -> str:
        return self.name()


CIRCLE = FiberType(0)
LINE = FiberType(1)

# model kinds
SADDLE = "saddle"
CAP = "cap"
OPEN_CAP = "open_cap"
BAND_CAP = "band_cap"
SQUARED = "squared"
LINE_TRANSIT = "line_transit"
BIRTH = "birth"
DEATH = "death"
CUT = "cut"
CLOSE = "close"

TRANSITS = (BIRTH, DEATH, CUT, CLOSE)


def saddle_one_handles(a: int, b: int, c: int) -> int:
    """1-handles attached to lines/circles below to reach the fibers above."""
    if a > 0:
        return a - 1 + b + c
    if (b, c) == (1, 1):
        return 2
    return b + c - 2


@dataclass(frozen=True)
class Slot:
    fiber: FiberType
    tube: str


@dataclass(frozen=True)
class LocalModel:
    id: str
    vertex: int
    kind: str
    route: str
    level: Fraction
    collar: Fraction
    lower: Tuple[Slot, ...]
    upper: Tuple[Slot, ...]
    params: Tuple[Tuple[str, int], ...] = ()
    sign: Optional[str] = None
    one_handles: int = 0
    n_handles: int = 0
    annotation: str = MORSE
    primary: bool = True

    def param(self, name: str, default=None):
        return dict(self.params).get(name, default)

    def slot_level(self, side: str) -> Fraction:
        return self.level - self.collar if side == "lower" else self.level + self.collar


@dataclass(frozen=True)
class Tube:
    id: str
    fiber: FiberType
    lower_model: str
    upper_model: str
    lo: Fraction
    hi: Fraction
    edge: Optional[int] = None


@dataclass(frozen=True)
class ConstructionPlan:
    dimension: int
    models: Tuple[LocalModel, ...]
    tubes: Tuple[Tube, ...]
    collar: Dict[int, Fraction]
    values: Dict[int, Fraction]

    def model(self, mid: str) -> LocalModel:
        for m in self.models:
            if m.id == mid:
                return m
        raise KeyError(mid)

    def tube(self, tid: str) -> Tube:
        for t in self.tubes:
            if t.id == tid:
                return t
        raise KeyError(tid)

    def models_at(self, vertex: int) -> List[LocalModel]:
        return [m for m in self.models if m.vertex == vertex]

    def collar_interval(self, vertex: int) -> Tuple[Fraction, Fraction]:
        h, w = self.values[vertex], self.collar[vertex]
        return h - w, h + w

    def replace_tube(self, tube: Tube) -> "ConstructionPlan":
        tubes = tuple(tube if t.id == tube.id else t for t in self.tubes)
        return ConstructionPlan(self.dimension, self.models, tubes, self.collar, self.values)

    def replace_model(self, model: LocalModel) -> "ConstructionPlan":
        models = tuple(model if m.id == model.id else m for m in self.models)
        return ConstructionPlan(self.dimension, models, self.tubes, self.collar, self.values)


def edge_fiber(label: int) -> FiberType:
    return FiberType(label)


# -- per-vertex stacks ------------------------------------------------------------

@dataclass
class _Draft:
    kind: str
    lower: List[FiberType]
    upper: List[FiberType]
    params: Dict[str, int] = field(default_factory=dict)
    sign: Optional[str] = None
    annotation: str = MORSE


class _Stack:
    """Models at one vertex, ordered bottom to top, with free interface slots."""

    def __init__(self):
        self.below: List[_Draft] = []   # nearest the base first
        self.base: Optional[_Draft] = None
        self.above: List[_Draft] = []
        self.links: List[Tuple[Tuple[str, int, int], Tuple[str, int, int]]] = []
        # free slots: (side, position, slot index) addresses
        self.free_up: List[Tuple[Tuple[str, int, int], FiberType]] = []
        self.free_down: List[Tuple[Tuple[str, int, int], FiberType]] = []

    def set_base(self, draft: _Draft) -> None:
        self.base = draft
        self.free_down = [(("base", 0, i), f) for i, f in enumerate(draft.lower)]
        self.free_up = [(("base", 0, i), f) for i, f in enumerate(draft.upper)]

    def _take(self, pool, fiber):
        for i in range(len(pool) - 1, -1, -1):
            if pool[i][1] == fiber:
                return pool.pop(i)[0]
        return None

    def push_above(self, draft: _Draft, host: FiberType) -> None:
        if self.base is None and not self.above:
            self.set_base(draft)
            return
        pos = len(self.above)
        self.above.append(draft)
        host_addr = self._take(self.free_up, host)
        if host_addr is None:
            raise PlanError(f"no free {host} slot above for {draft.kind}")
        # the host enters through lower slot 0
        self.links.append((host_addr, ("above", pos, 0)))
        for i, f in enumerate(draft.lower[1:], start=1):
            self.free_down.append((("above", pos, i), f))
        self.free_up.extend((("above", pos, i), f) for i, f in enumerate(draft.upper))

    def push_below(self, draft: _Draft, host: FiberType) -> None:
        if self.base is None and not self.below:
            self.set_base(draft)
            return
        pos = len(self.below)
        self.below.append(draft)
        host_addr = self._take(self.free_down, host)
        if host_addr is None:
            raise PlanError(f"no free {host} slot below for {draft.kind}")
        self.links.append((("below", pos, 0), host_addr))
        for i, f in enumerate(draft.upper[1:], start=1):
            self.free_up.append((("below", pos, i), f))
        self.free_down.extend((("below", pos, i), f) for i, f in enumerate(draft.lower))

    def ordered(self) -> List[Tuple[Tuple[str, int], _Draft, int]]:
        """(address, draft, offset) bottom to top; ``offset`` counts steps from the base level."""
        out = []
        n_below = len(self.below)
        for pos in range(n_below - 1, -1, -1):
            out.append((("below", pos), self.below[pos], -(pos + 1)))
        if self.base is not None:
            out.append((("base", 0), self.base, 0))
        for pos, d in enumerate(self.above):
            out.append((("above", pos), d, pos + 1))
        return out


def _draft_saddle(a, b, c):
    return _Draft(SADDLE, [LINE] * a + [CIRCLE] * b, [LINE] * a + [CIRCLE] * c,
                  dict(a=a, b=b, c=c))


def _draft_squared(a, b, c, sign):
    fibers = [LINE] * a + [CIRCLE] * b + [LINE] * a + [CIRCLE] * c
    lower, upper = (fibers, []) if sign == "max" else ([], fibers)
    return _Draft(SQUARED, lower, upper, dict(a=a, b=b, c=c), sign, FOLD_COMPOSITION)


def _draft_cap(kind, fiber, sign):
    lower, upper = ([fiber], []) if sign == "max" else ([], [fiber])
    ann = MORSE if kind == CAP else MORSE_BOTT
    return _Draft(kind, lower, upper, {}, sign, ann)


def _draft_birth(host):
    return _Draft(BIRTH, [host], [host, LINE], dict(host=host.k), annotation=MORSE_BOTT)


def _draft_death(host):
    return _Draft(DEATH, [host, LINE], [host], dict(host=host.k), annotation=MORSE_BOTT)


def _draft_cut(k):
    return _Draft(CUT, [FiberType(k)], [FiberType(k + 1)], dict(host=k), annotation=MORSE_BOTT)


def _draft_close(k):
    return _Draft(CLOSE, [FiberType(k + 1)], [FiberType(k)], dict(host=k), annotation=MORSE_BOTT)


def _binary_stack(tag: RouteTag) -> _Stack:
    st = _Stack()
    kind = tag.kind
    if kind == R_SADDLE:
        st.set_base(_draft_saddle(tag.param("a"), tag.param("b"), tag.param("c")))
    elif kind == R_CAP:
        st.set_base(_draft_cap(CAP, CIRCLE, tag.sign))
    elif kind == R_OPEN_CAP:
        st.set_base(_draft_cap(OPEN_CAP, LINE, tag.sign))
    elif kind == R_SQUARED:
        st.set_base(_draft_squared(tag.param("a"), tag.param("b"), tag.param("c"), tag.sign))
    elif kind == R_CASE_A:
        st.set_base(_Draft(LINE_TRANSIT, [LINE], [LINE], annotation=MORSE_BOTT))
    elif kind == R_CASE_B:
        A, b, D, c = (tag.param(x) for x in "AbDc")
        m = min(A, D)
        if (m, b, c) == (1, 0, 0):
            st.set_base(_Draft(LINE_TRANSIT, [LINE], [LINE], annotation=MORSE_BOTT))
        elif (m, b, c) != (0, 1, 1):
            st.set_base(_draft_saddle(m, b, c))
        host = LINE if m > 0 else CIRCLE
        if st.base is None:
            # trivial circle bundle: the circle passes through the first transit
            pass
        for _ in range(D - A):
            st.push_above(_draft_birth(host), host)
        for _ in range(A - D):
            st.push_below(_draft_death(host), host)
    elif kind == R_CASE_C:
        b, D = tag.param("b"), tag.param("D")
        if b > 1:
            st.set_base(_draft_saddle(0, b, 1))
        st.push_above(_draft_cut(0), CIRCLE)
        for _ in range(D - 1):
            st.push_above(_draft_birth(LINE), LINE)
    elif kind == R_CASE_D:
        c, A = tag.param("c"), tag.param("A")
        if c > 1:
            st.set_base(_draft_saddle(0, 1, c))
        st.push_below(_draft_close(0), CIRCLE)
        for _ in range(A - 1):
            st.push_below(_draft_death(LINE), LINE)
    elif kind == R_LINE_SQUARED:
        lines, circles = tag.param("lines"), tag.param("circles")
        a = (lines - 1) // 2
        if a == 0 and circles == 1:
            st.set_base(_draft_cap(CAP, CIRCLE, tag.sign))
        else:
            bb, cc = split_circles(circles)
            st.set_base(_draft_squared(a, bb, cc, tag.sign))
        host = LINE if a > 0 else CIRCLE
        if tag.sign == "max":
            st.push_below(_draft_death(host), host)
        else:
            st.push_above(_draft_birth(host), host)
    else:
        raise PlanError(f"unknown route {kind}")
    return st


def _general_stack(g: LabeledGraph, v: int) -> _Stack:
    st = _Stack()
    below = g.edges_below(v)
    above = g.edges_above(v)
    deg = len(below) + len(above)
    if not below or not above:
        sign = "min" if not below else "max"
        if deg == 1:
            label = (below or above)[0].label
            kinds = {0: CAP, 1: OPEN_CAP, 2: BAND_CAP}
            if label not in kinds:
                raise PlanError(f"vertex {v}: degree-1 edge label {label} not in {{0, 1, 2}}")
            st.set_base(_draft_cap(kinds[label], FiberType(label), sign))
            return st
        b, c = split_circles(deg)
        d = _draft_squared(0, b, c, sign)
        d.annotation = FOLD_COMPOSITION
        st.set_base(d)
    else:
        st.set_base(_draft_saddle(0, len(below), len(above)))
    # disk-to-collar replacements, one chain per labeled edge
    for e in sorted(above, key=lambda e: e.id):
        for k in range(e.label):
            st.push_above(_draft_cut(k), FiberType(k))
    for e in sorted(below, key=lambda e: e.id):
        for k in range(e.label):
            st.push_below(_draft_close(k), FiberType(k))
    return st


def _assign_edges(st: _Stack, edges, side: str, g: LabeledGraph, v: int):
    pool = list(st.free_up if side == "up" else st.free_down)
    assigned = {}
    for e in sorted(edges, key=lambda e: e.id):
        fiber = edge_fiber(e.label)
        for i, (addr, f) in enumerate(pool):
            if f == fiber:
                assigned[addr] = e.id
                pool.pop(i)
                break
        else:
            raise PlanError(f"vertex {v}: no {side} slot for edge {e.id} ({fiber})")
    if pool:
        raise PlanError(f"vertex {v}: unassigned {side} slots {pool}")
    return assigned


def plan(g: LabeledGraph, routes: Optional[Dict[int, RouteTag]] = None,
         n: Optional[int] = None) -> ConstructionPlan:
    """Build the construction plan for ``g``."""
    if n is None:
        n = g.dimension
    if g.mode == GENERAL:
        if n < 2:
            raise PlanError("general-mode plans need n >= 2")
        failures = [r for r in check_general_conditions(g) if not r.passed]
        if failures:
            raise PlanError("; ".join(r.reason for r in failures))
    elif n != 1:
        raise PlanError("binary-mode plans are one-dimensional")
    if g.mode == BINARY and routes is None:
        routes = classify_route(g)
    w = min_value_gap(g) / 4

    models: List[LocalModel] = []
    tubes: List[Tube] = []
    ends: Dict[int, Dict[str, Tuple[str, int]]] = {e.id: {} for e in g.edges}
    slot_tube: Dict[Tuple[str, str, int], str] = {}
    internal: List[Tuple[str, int, str, int, FiberType]] = []

    for v in g.vertices:
        h = g.vertices[v]
        if g.mode == BINARY:
            tag = routes[v]
            st = _binary_stack(tag)
            route = str(tag)
        else:
            st = _general_stack(g, v)
            route = "General"
        up_edges = _assign_edges(st, g.edges_above(v), "up", g, v)
        down_edges = _assign_edges(st, g.edges_below(v), "down", g, v)
        ordered = st.ordered()
        if st.base is None:
            raise PlanError(f"vertex {v}: empty local model stack")
        span = max(len(st.above), len(st.below)) + 1
        step = w / span
        mc = step / 3
        ids = {}
        for (side, pos), draft, offset in ordered:
            suffix = "" if side == "base" else f".{side[0]}{pos + 1}"
            ids[(side, pos)] = mid = f"v{v}{suffix}"
        for (side, pos), draft, offset in ordered:
            mid = ids[(side, pos)]

            def slots(which, fibers):
                out = []
                for i, f in enumerate(fibers):
                    addr = (side, pos, i)
                    key = (mid, which, i)
                    if which == "upper" and addr in up_edges:
                        eid = up_edges[addr]
                        tid = f"e{eid}"
                        ends[eid]["lower"] = (mid, i)
                    elif which == "lower" and addr in down_edges:
                        eid = down_edges[addr]
                        tid = f"e{eid}"
                        ends[eid]["upper"] = (mid, i)
                    else:
                        tid = None
                    out.append([f, tid])
                    slot_tube[key] = tid
                return out

            lower = slots("lower", draft.lower)
            upper = slots("upper", draft.upper)
            p = draft.params
            one_h = n_h = 0
            if draft.kind == SADDLE:
                one_h = saddle_one_handles(p["a"], p["b"], p["c"])
                if n > 1:
                    one_h = p["b"] - 1 + (1 if (p["b"], p["c"]) == (1, 1) else 0)
                    n_h = p["c"] - 1 + (1 if (p["b"], p["c"]) == (1, 1) else 0)
            elif draft.kind == SQUARED and (p["a"], p["b"], p["c"]) not in SQUARED_SPECIALS:
                one_h = saddle_one_handles(p["a"], p["b"], p["c"])
            models.append(LocalModel(
                id=mid, vertex=v, kind=draft.kind, route=route,
                level=h + offset * step, collar=mc,
                lower=lower, upper=upper, params=tuple(sorted(p.items())),
                sign=draft.sign, one_handles=one_h, n_handles=n_h,
                annotation=draft.annotation, primary=offset == 0))
        for (sa, pa, ia), (sb, pb, ib) in st.links:
            lo_id, hi_id = ids[(sa, pa)], ids[(sb, pb)]
            internal.append((lo_id, ia, hi_id, ib))

    by_id = {m.id: m for m in models}
    for lo_id, ia, hi_id, ib in internal:
        tid = f"{lo_id}>{hi_id}"
        by_id[lo_id].upper[ia][1] = tid
        by_id[hi_id].lower[ib][1] = tid
        lo_m, hi_m = by_id[lo_id], by_id[hi_id]
        fiber = lo_m.upper[ia][0]
        tubes.append(Tube(tid, fiber, lo_id, hi_id,
                          lo_m.slot_level("upper"), hi_m.slot_level("lower")))
    for e in g.edges:
        lo_id, _ = ends[e.id]["lower"]
        hi_id, _ = ends[e.id]["upper"]
        lo_m, hi_m = by_id[lo_id], by_id[hi_id]
        tubes.append(Tube(f"e{e.id}", edge_fiber(e.label), lo_id, hi_id,
                          lo_m.slot_level("upper"), hi_m.slot_level("lower"), e.id))
    frozen = []
    for m in models:
        frozen.append(LocalModel(
            m.id, m.vertex, m.kind, m.route, m.level, m.collar,
            tuple(Slot(f, t) for f, t in m.lower), tuple(Slot(f, t) for f, t in m.upper),
            m.params, m.sign, m.one_handles, m.n_handles, m.annotation, m.primary))
    return ConstructionPlan(n, tuple(frozen), tuple(sorted(tubes, key=lambda t: t.id)),
                            {v: w for v in g.vertices}, dict(g.vertices))


# -- symbolic sweep ----------------------------------------------------------------

def expected_interfaces(m: LocalModel, n: int):
    """(lower, upper) fiber multisets a model of this kind may rewrite, or None."""
    p = dict(m.params)
    C = Counter
    if m.kind == SADDLE:
        a, b, c = p["a"], p["b"], p["c"]
        if (a, b, c) in FORBIDDEN_TRIPLES:
            return None
        if n > 1 and a:
            return None
        return C({1: a, 0: b}), C({1: a, 0: c})
    if m.kind == LINE_TRANSIT:
        return (C({1: 1}), C({1: 1})) if n == 1 else None
    if m.kind in (CAP, OPEN_CAP, BAND_CAP):
        k = {CAP: 0, OPEN_CAP: 1, BAND_CAP: 2}[m.kind]
        if m.kind == BAND_CAP and n == 1:
            return None
        side = C({k: 1})
        return (side, C()) if m.sign == "max" else (C(), side)
    if m.kind == SQUARED:
        a, b, c = p["a"], p["b"], p["c"]
        if (a, b, c) in FORBIDDEN_TRIPLES - SQUARED_SPECIALS:
            return None
        side = C({1: 2 * a, 0: b + c})
        return (side, C()) if m.sign == "max" else (C(), side)
    if m.kind == BIRTH:
        k = p["host"]
        return C({k: 1}), C({k: 1}) + C({1: 1})
    if m.kind == DEATH:
        k = p["host"]
        return C({k: 1}) + C({1: 1}), C({k: 1})
    if m.kind == CUT:
        k = p["host"]
        return C({k: 1}), C({k + 1: 1})
    if m.kind == CLOSE:
        k = p["host"]
        return C({k + 1: 1}), C({k: 1})
    return None


@dataclass
class SimulationResult:
    passed: bool
    trace: List[str]
    failed_model: Optional[str] = None
    reason: str = ""


def _ms(counter: Counter, n: int) -> str:
    parts = [f"{cnt}x{FiberType(k).name(n)}" for k, cnt in sorted(counter.items()) if cnt]
    return "{" + ", ".join(parts) + "}"


def simulate_fiber_transitions(p: ConstructionPlan) -> SimulationResult:
    """Sweep upward, applying each model as a rewrite of the live fiber multiset."""
    n = p.dimension
    trace: List[str] = []
    tubes = {t.id: t for t in p.tubes}
    live: Dict[str, FiberType] = {}
    used_lower = Counter()
    used_upper = Counter()

    def fail(m, why):
        trace.append(f"FAIL at {m.id if m else '-'}: {why}")
        return SimulationResult(False, trace, m.id if m else None, why)

    for t in p.tubes:
        if not t.lo < t.hi:
            return fail(None, f"tube {t.id} has empty value interval")
    for m in sorted(p.models, key=lambda m: (m.level, m.id)):
        slots = expected_interfaces(m, n)
        if slots is None:
            return fail(m, f"{m.kind} {dict(m.params)} is not a legal local model in dimension {n}")
        before = Counter(f.k for f in live.values())
        consumed = Counter()
        for s in m.lower:
            t = tubes.get(s.tube)
            if t is None or s.tube not in live:
                return fail(m, f"lower slot expects live tube {s.tube}")
            if t.upper_model != m.id:
                return fail(m, f"tube {s.tube} does not end at {m.id}")
            if live[s.tube] != s.fiber:
                return fail(m, f"tube {s.tube} carries {live[s.tube].name(n)}, "
                               f"slot expects {s.fiber.name(n)}")
            consumed[s.fiber.k] += 1
            used_upper[s.tube] += 1
            del live[s.tube]
        produced = Counter()
        for s in m.upper:
            t = tubes.get(s.tube)
            if t is None:
                return fail(m, f"upper slot glued to unknown tube {s.tube}")
            if t.lower_model != m.id or t.fiber != s.fiber:
                return fail(m, f"tube {s.tube} does not match upper slot {s.fiber.name(n)}")
            if s.tube in live or used_lower[s.tube]:
                return fail(m, f"tube {s.tube} glued twice")
            used_lower[s.tube] += 1
            live[s.tube] = t.fiber
            produced[s.fiber.k] += 1
        want_lo, want_hi = slots
        if +consumed != +want_lo or +produced != +want_hi:
            return fail(m, f"{m.kind} rewrites {_ms(want_lo, n)} -> {_ms(want_hi, n)}, "
                           f"got {_ms(consumed, n)} -> {_ms(produced, n)}")
        after = Counter(f.k for f in live.values())
        trace.append(f"{m.id} @ {format_rational(m.level)} [{m.kind}]: "
                     f"{_ms(before, n)} -> {_ms(after, n)}")
    if live:
        return fail(None, f"tubes never closed: {sorted(live)}")
    for t in p.tubes:
        if used_lower[t.id] != 1 or used_upper[t.id] != 1:
            return fail(None, f"tube {t.id} not glued at both ends")
    trace.append("sweep ends with no live fibers")
    return SimulationResult(True, trace)


# -- JSON --------------------------------------------------------------------------

def plan_to_json(p: ConstructionPlan) -> str:
    n = p.dimension

    def slot(s):
        return {"fiber": s.fiber.name(n), "k": s.fiber.k, "tube": s.tube}

    doc = {
        "dimension": n,
        "collar": {str(v): format_rational(w) for v, w in sorted(p.collar.items())},
        "models": [
            {
                "id": m.id,
                "vertex": m.vertex,
                "kind": m.kind,
                "route": m.route,
                "level": format_rational(m.level),
                "collar": format_rational(m.collar),
                "primary": m.primary,
                "sign": m.sign,
                "params": dict(m.params),
                "handles": {"one_handles": m.one_handles, "n_handles": m.n_handles},
                "annotation": m.annotation,
                "lower": [slot(s) for s in m.lower],
                "upper": [slot(s) for s in m.upper],
            }
            for m in p.models
        ],
        "tubes": [
            {
                "id": t.id,
                "edge": t.edge,
                "fiber": t.fiber.name(n),
                "k": t.fiber.k,
                "lower_model": t.lower_model,
                "upper_model": t.upper_model,
                "lo": format_rational(t.lo),
                "hi": format_rational(t.hi),
            }
            for t in p.tubes
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
