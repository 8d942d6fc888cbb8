"""Shared builders for the test suites."""

from fractions import Fraction

from reebsynth.graph_model import Edge, LabeledGraph


def star(in1=0, in0=0, out1=0, out0=0):
    """Centre vertex 0 at value 0 with leaves below (-1) and above (+1)."""
    verts = {0: Fraction(0)}
    edges = []
    nxt = 1
    for count, label, value in ((in1, 1, -1), (in0, 0, -1), (out1, 1, 1), (out0, 0, 1)):
        for _ in range(count):
            verts[nxt] = Fraction(value)
            edges.append(Edge(len(edges) + 1, nxt, 0, label))
            nxt += 1
    return LabeledGraph(verts, tuple(edges))


def graph(text):
    from reebsynth.graph_model import parse_graph
    return parse_graph(text)


K2_0 = "v 1 0; v 2 1; e 1 1 2 0"
K2_1 = "v 1 0; v 2 1; e 1 1 2 1"
THETA = "v 1 0 ; v 2 1 ; e 1 1 2 0 ; e 2 1 2 0"
LINE_PATH = "v 0 0; v 1 1; v 2 2; e 1 0 1 1; e 2 1 2 1"
