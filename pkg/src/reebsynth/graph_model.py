"""Labeled input graphs: parsing, orientation, vertex profiles and route dispatch.

A labeled graph is a connected loopless multigraph whose vertices carry exact
rational values (a good function) and whose edges carry non-negative integer
fiber labels.  Every edge is oriented from its lower endpoint to its higher one.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

BINARY = "binary"
GENERAL = "general"


class GraphError(ValueError):
    """Raised for malformed or invalid labeled graphs."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational: {text!r}")
    value = Fraction(text)
    return value


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    label: int


@dataclass(frozen=True)
class LabeledGraph:
    vertices: Mapping[int, Fraction]
    edges: Tuple[Edge, ...]
    mode: str = BINARY
    dimension: int = 1

    def __post_init__(self):
        object.__setattr__(self, "vertices", dict(sorted(
            (int(k), Fraction(v)) for k, v in self.vertices.items())))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        self.validate()

    # -- validation -------------------------------------------------------
    def validate(self) -> None:
        if self.mode not in (BINARY, GENERAL):
            raise GraphError(f"unknown mode {self.mode!r}")
        if self.mode == GENERAL and self.dimension < 2:
            raise GraphError("general mode needs dimension n >= 2")
        if self.mode == BINARY and self.dimension != 1:
            raise GraphError("binary mode is one-dimensional")
        if not self.edges:
            raise GraphError("graph needs at least one edge")
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            for end in (e.u, e.v):
                if end not in self.vertices:
                    raise GraphError(f"edge {e.id} references unknown vertex {end}")
            if e.u == e.v:
                raise GraphError(f"edge {e.id} is a self-loop")
            if e.label < 0:
                raise GraphError(f"edge {e.id} has negative label")
            if self.mode == BINARY and e.label not in (0, 1):
                raise GraphError(f"edge {e.id} label {e.label} not in {{0, 1}} (binary mode)")
            if self.vertices[e.u] == self.vertices[e.v]:
                raise GraphError(f"edge {e.id} joins vertices of equal value")
        touched = {x for e in self.edges for x in (e.u, e.v)}
        isolated = set(self.vertices) - touched
        if isolated:
            raise GraphError(f"isolated vertices: {sorted(isolated)}")
        adj = self.adjacency()
        start = next(iter(self.vertices))
        stack, reached = [start], {start}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in reached:
                    reached.add(y)
                    stack.append(y)
        if len(reached) != len(self.vertices):
            raise GraphError("graph is disconnected")

    # -- queries ----------------------------------------------------------
    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        return adj

    def lower(self, e: Edge) -> int:
        """Starting point of the edge: the endpoint with the smaller value."""
        return e.u if self.vertices[e.u] < self.vertices[e.v] else e.v

    def upper(self, e: Edge) -> int:
        return e.v if self.vertices[e.u] < self.vertices[e.v] else e.u

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def incident(self, v: int) -> List[Edge]:
        return [e for e in self.edges if v in (e.u, e.v)]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def edges_below(self, v: int) -> List[Edge]:
        """Edges whose higher endpoint is ``v``."""
        return [e for e in self.edges if self.upper(e) == v]

    def edges_above(self, v: int) -> List[Edge]:
        return [e for e in self.edges if self.lower(e) == v]

    def with_labels(self, labels: Mapping[int, int]) -> "LabeledGraph":
        edges = [Edge(e.id, e.u, e.v, labels.get(e.id, e.label)) for e in self.edges]
        return LabeledGraph(self.vertices, tuple(edges), self.mode, self.dimension)


# -- .rgl text format ----------------------------------------------------------

_INT = re.compile(r"[+-]?\d+")


def parse_graph(text: str) -> LabeledGraph:
    """Parse ``.rgl`` text.

    Records may be separated by newlines or by ``;``.  ``#`` starts a comment.
    """
    vertices: Dict[int, Fraction] = {}
    edges: List[Edge] = []
    mode, dimension = BINARY, 1
    seen_record = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split(";"):
            col = offset + 1 + (len(chunk) - len(chunk.lstrip()))
            offset += len(chunk) + 1
            tokens = chunk.split()
            if not tokens:
                continue
            kind = tokens[0]
            if kind == "mode":
                if seen_record:
                    raise GraphError("mode header must precede records", lineno, col)
                if tokens[1:] == ["binary"]:
                    mode, dimension = BINARY, 1
                elif len(tokens) == 3 and tokens[1] == "general" and _INT.fullmatch(tokens[2]):
                    mode, dimension = GENERAL, int(tokens[2])
                else:
                    raise GraphError(f"bad mode header {chunk.strip()!r}", lineno, col)
                continue
            seen_record = True
            if kind == "v":
                if len(tokens) != 3 or not _INT.fullmatch(tokens[1]):
                    raise GraphError("expected 'v <id> <value>'", lineno, col)
                try:
                    value = parse_rational(tokens[2])
                except (ValueError, ZeroDivisionError):
                    raise GraphError(f"bad value {tokens[2]!r}", lineno, col) from None
                vid = int(tokens[1])
                if vid in vertices:
                    raise GraphError(f"duplicate vertex id {vid}", lineno, col)
                vertices[vid] = value
            elif kind == "e":
                if len(tokens) != 5 or not all(_INT.fullmatch(t) for t in tokens[1:]):
                    raise GraphError("expected 'e <id> <u> <v> <label>'", lineno, col)
                eid, u, v, label = (int(t) for t in tokens[1:])
                if any(e.id == eid for e in edges):
                    raise GraphError(f"duplicate edge id {eid}", lineno, col)
                if label < 0:
                    raise GraphError("labels are non-negative", lineno, col)
                edges.append(Edge(eid, u, v, label))
            else:
                raise GraphError(f"unknown record {kind!r}", lineno, col)
    return LabeledGraph(vertices, tuple(edges), mode, dimension)


def serialize_graph(g: LabeledGraph, comments: Optional[Mapping[int, str]] = None) -> str:
    lines = []
    if g.mode == GENERAL:
        lines.append(f"mode general {g.dimension}")
    for vid, value in g.vertices.items():
        line = f"v {vid} {format_rational(value)}"
        if comments and vid in comments:
            line += f"  # {comments[vid]}"
        lines.append(line)
    for e in g.edges:
        lines.append(f"e {e.id} {e.u} {e.v} {e.label}")
    return "\n".join(lines) + "\n"


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    out = [f"digraph {name} {{"]
    for vid, value in g.vertices.items():
        out.append(f'  {vid} [label="{vid}: {format_rational(value)}"];')
    for e in g.edges:
        out.append(f'  {g.lower(e)} -> {g.upper(e)} [label="{e.label}", id="e{e.id}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# -- profiles and conditions --------------------------------------------------

@dataclass(frozen=True)
class VertexProfile:
    in0: int
    in1: int
    out0: int
    out1: int

    @property
    def is_extremum(self) -> bool:
        return self.in0 + self.in1 == 0 or self.out0 + self.out1 == 0

    @property
    def degree(self) -> int:
        return self.in0 + self.in1 + self.out0 + self.out1


def vertex_profile(g: LabeledGraph, v: int) -> VertexProfile:
    if v not in g.vertices:
        raise GraphError(f"unknown vertex id {v}")
    counts = Counter()
    for e in g.incident(v):
        side = "in" if g.upper(e) == v else "out"
        counts[f"{side}{1 if e.label == 1 else 0}"] += 1
    return VertexProfile(counts["in0"], counts["in1"], counts["out0"], counts["out1"])


@dataclass(frozen=True)
class ConditionResult:
    vertex: Optional[int]
    passed: bool
    reason: str


def _binary_vertex(p: VertexProfile) -> Tuple[bool, str]:
    if p.is_extremum:
        ones = p.in1 + p.out1
        if ones % 2:
            return False, f"extremum meets {ones} label-1 edges (odd)"
        return True, f"extremum meets {ones} label-1 edges (even)"
    if p.in1 != p.out1:
        return False, f"label-1 edges below ({p.in1}) and above ({p.out1}) differ"
    if p.in1 == 1 and p.in0 + p.out0 == 0:
        return False, "single label-1 edge on each side and no label-0 edge"
    return True, "balanced label-1 edges"


def check_binary_conditions(g: LabeledGraph) -> Dict[int, ConditionResult]:
    report = {}
    for v in g.vertices:
        ok, why = _binary_vertex(vertex_profile(g, v))
        report[v] = ConditionResult(v, ok, why)
    return report


def check_general_conditions(g: LabeledGraph) -> List[ConditionResult]:
    """Edges touching a degree-1 vertex may only carry 0, 1 or 2."""
    results = []
    for e in g.edges:
        leafy = g.degree(e.u) == 1 or g.degree(e.v) == 1
        if leafy and e.label not in (0, 1, 2):
            results.append(ConditionResult(None, False,
                                           f"edge {e.id} at a degree-1 vertex has label {e.label}"))
    if not results:
        results.append(ConditionResult(None, True, "every edge at a degree-1 vertex has label 0, 1 or 2"))
    return results


# -- route dispatch -------------------------------------------------------------

MORSE = "Morse"
MORSE_BOTT = "MorseBott"
FOLD_COMPOSITION = "FoldComposition"

R_SADDLE = "Saddle"
R_CAP = "Cap"
R_SQUARED = "SquaredExtremum"
R_CASE_A = "LineCaseA"
R_CASE_B = "LineCaseB"
R_CASE_C = "LineCaseC"
R_CASE_D = "LineCaseD"
R_OPEN_CAP = "LineOpenCap"
R_LINE_SQUARED = "LineSquaredExtremum"

CIRCLE_KINDS = (R_SADDLE, R_CAP, R_SQUARED)


@dataclass(frozen=True)
class RouteTag:
    """Which local construction realizes a vertex.

    ``params`` holds the integers the construction needs (``a``, ``b``, ``c``
    for saddles; the full profile for the odd squared extremum).  ``sign`` is
    ``"min"`` or ``"max"`` for extrema.  ``annotation`` records the smooth
    class of the singularity and is never read by synthesis.
    """

    kind: str
    params: Tuple[Tuple[str, int], ...] = ()
    sign: Optional[str] = None
    annotation: str = MORSE
    flags: Tuple[str, ...] = ()

    def param(self, name: str) -> int:
        return dict(self.params)[name]

    @property
    def is_circle_route(self) -> bool:
        return self.kind in CIRCLE_KINDS

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        if self.sign:
            inner = ", ".join(x for x in (inner, f"sign={self.sign}") if x)
        return f"{self.kind}{{{inner}}}" if inner else self.kind


def split_circles(m: int) -> Tuple[int, int]:
    return (m + 1) // 2, m // 2


def _tag(kind, sign=None, annotation=MORSE, flags=(), **params):
    return RouteTag(kind, tuple(params.items()), sign, annotation, tuple(flags))


def route_for_profile(p: VertexProfile) -> RouteTag:
    """Dispatch a binary-mode vertex profile to one local construction.

    ``A``/``b`` count label-1/label-0 edges below the vertex and ``D``/``c``
    those above.
    """
    A, b, D, c = p.in1, p.in0, p.out1, p.out0
    if p.is_extremum:
        sign = "min" if A + b == 0 else "max"
        lines, circles = A + D, b + c
        if p.degree == 1:
            if lines == 0:
                return _tag(R_CAP, sign=sign)
            return _tag(R_OPEN_CAP, sign=sign, annotation=MORSE_BOTT)
        if lines % 2 == 0:
            bb, cc = split_circles(circles)
            return _tag(R_SQUARED, sign=sign, annotation=FOLD_COMPOSITION,
                        a=lines // 2, b=bb, c=cc)
        return _tag(R_LINE_SQUARED, sign=sign, annotation=FOLD_COMPOSITION,
                    lines=lines, circles=circles)
    ok, _ = _binary_vertex(p)
    if ok:
        return _tag(R_SADDLE, a=A, b=b, c=c)
    if A == D:
        return _tag(R_CASE_A, annotation=MORSE_BOTT)
    params = dict(A=A, b=b, D=D, c=c)
    if A and D:
        return _tag(R_CASE_B, annotation=MORSE_BOTT, **params)
    if A == 0 and c > 0 or D == 0 and b > 0:
        return _tag(R_CASE_B, annotation=MORSE_BOTT, **params)
    if A == 0:
        return _tag(R_CASE_C, annotation=MORSE_BOTT, **params)
    return _tag(R_CASE_D, annotation=MORSE_BOTT, **params)


def classify_route(g: LabeledGraph) -> Dict[int, RouteTag]:
    if g.mode != BINARY:
        raise GraphError("route classification is defined for binary mode")
    return {v: route_for_profile(vertex_profile(g, v)) for v in g.vertices}


def min_value_gap(g: LabeledGraph) -> Fraction:
    """Smallest positive difference between distinct vertex values."""
    values = sorted(set(g.vertices.values()))
    gaps = [b - a for a, b in zip(values, values[1:])]
    return min(gaps)
