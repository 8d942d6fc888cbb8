from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reebsynth.generate import gen_random
from reebsynth.graph_model import (GENERAL, GraphError, R_CASE_A, R_CASE_B, R_CASE_C,
                                   R_CASE_D, R_CAP, R_LINE_SQUARED, R_OPEN_CAP, R_SADDLE,
                                   R_SQUARED, check_binary_conditions,
                                   check_general_conditions, classify_route,
                                   format_rational, parse_graph, parse_rational,
                                   route_for_profile, serialize_graph, to_dot,
                                   vertex_profile, VertexProfile)
from helpers import K2_0, THETA, star


def test_theta_multigraph_parses():
    g = parse_graph(THETA)
    assert len(g.edges) == 2 and g.degree(1) == 2


@pytest.mark.parametrize("text, fragment", [
    ("v 1 0; v 2 0; e 1 1 2 0", "equal value"),
    ("v 1 0; v 2 1; e 1 1 1 0", "self-loop"),
    ("v 1 0; v 2 1; v 3 2; e 1 1 2 0", "isolated"),
    ("v 1 0; v 2 1; v 3 2; v 4 3; e 1 1 2 0; e 2 3 4 0", "disconnected"),
    ("v 1 0; v 2 1; e 1 1 2 2", "binary"),
    ("v 1 0; v 1 1", "duplicate vertex"),
    ("v 1 0; v 2 1; e 1 1 2 0; e 1 1 2 0", "duplicate edge"),
    ("v 1 x", "bad value"),
    ("q 1", "unknown record"),
])
def test_rejections(text, fragment):
    with pytest.raises(GraphError) as info:
        parse_graph(text)
    assert fragment in str(info.value)


def test_error_position_reported():
    with pytest.raises(GraphError) as info:
        parse_graph("v 1 0\nv 2 1\nfoo 3")
    assert info.value.line == 3


def test_rationals_are_exact():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(7, 3)) == "7/3"
    assert format_rational(Fraction(4)) == "4"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(2, 12))
def test_serialize_roundtrip(seed, budget):
    g = gen_random(budget, seed)
    text = serialize_graph(g)
    assert serialize_graph(parse_graph(text)) == text


def test_general_roundtrip_and_dot():
    g = gen_random(6, 3, mode=GENERAL, n=3)
    assert parse_graph(serialize_graph(g)) == g
    dot = to_dot(g)
    for v, h in g.vertices.items():
        assert format_rational(h) in dot
    for e in g.edges:
        assert f'label="{e.label}"' in dot


@pytest.mark.parametrize("profile, kind", [
    (dict(out0=1), R_CAP),
    (dict(out1=1), R_OPEN_CAP),
    (dict(out0=2), R_SQUARED),
    (dict(out1=3), R_LINE_SQUARED),
    (dict(in1=2, out1=2, in0=1), R_SADDLE),
    (dict(in1=1, out1=1), R_CASE_A),
    (dict(in1=1, out1=3, in0=1), R_CASE_B),
    (dict(in0=2, out1=1), R_CASE_C),
    (dict(in1=1, out0=2), R_CASE_D),
])
def test_route_dispatch(profile, kind):
    g = star(**profile)
    assert classify_route(g)[0].kind == kind


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_every_profile_has_a_route(a, b, d, c):
    if a + b + d + c == 0:
        return
    tag = route_for_profile(VertexProfile(b, a, c, d))
    assert tag.kind


def test_binary_condition_reasons():
    g = star(in1=1, out1=1)
    assert not check_binary_conditions(g)[0].passed
    assert check_binary_conditions(parse_graph(K2_0))[1].passed


def test_general_condition():
    bad = parse_graph("mode general 2\nv 1 0\nv 2 1\ne 1 1 2 3")
    assert not check_general_conditions(bad)[0].passed
    ok = parse_graph("mode general 2\nv 1 0\nv 2 1\ne 1 1 2 2")
    assert check_general_conditions(ok)[0].passed


def test_profile_counts():
    g = star(in1=2, in0=1, out0=3)
    p = vertex_profile(g, 0)
    assert (p.in0, p.in1, p.out0, p.out1) == (1, 2, 3, 0)
