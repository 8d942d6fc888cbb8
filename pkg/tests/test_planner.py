import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reebsynth.generate import gen_random
from reebsynth.graph_model import GENERAL, parse_graph
from reebsynth.planner import (CIRCLE, LINE, PlanError, FiberType, plan, plan_to_json,
                               saddle_one_handles, simulate_fiber_transitions)
from helpers import K2_0, LINE_PATH, star


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32), st.booleans())
def test_binary_plans_simulate(seed, ones):
    g = gen_random(12, seed, all_ones=ones)
    assert simulate_fiber_transitions(plan(g)).passed


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([2, 3, 4]))
def test_general_plans_simulate(seed, n):
    g = gen_random(10, seed, mode=GENERAL, n=n)
    assert simulate_fiber_transitions(plan(g)).passed


@pytest.mark.parametrize("a,b,c", [(1, 1, 0), (2, 1, 1), (3, 0, 2), (1, 0, 1)])
def test_handle_count(a, b, c):
    p = plan(star(in1=a, in0=b, out1=a, out0=c))
    m = p.model("v0")
    assert m.kind == "saddle"
    assert m.one_handles == a - 1 + b + c == saddle_one_handles(a, b, c)


def test_case_b_stacks_transits():
    p = plan(star(in1=1, in0=1, out1=3))
    models = p.models_at(0)
    assert Counter(m.kind for m in models) == Counter(saddle=1, birth=2)
    lo, hi = p.collar_interval(0)
    assert all(lo < m.level - m.collar and m.level + m.collar < hi for m in models)
    assert len({m.level for m in models}) == 3


def test_collars_hold_no_foreign_value():
    for seed in range(40):
        g = gen_random(12, seed)
        p = plan(g)
        for v in g.vertices:
            lo, hi = p.collar_interval(v)
            for w, h in g.vertices.items():
                if h != g.vertices[v]:
                    assert not lo <= h <= hi


def test_tube_mismatch_fails_simulation():
    p = plan(parse_graph(K2_0))
    t = p.tubes[0]
    from dataclasses import replace
    bad = p.replace_tube(replace(t, fiber=LINE))
    res = simulate_fiber_transitions(bad)
    assert not res.passed and res.failed_model is not None


def test_band_cap_in_dimension_two():
    g = parse_graph("mode general 2\nv 1 0\nv 2 1\ne 1 1 2 2")
    p = plan(g)
    assert {m.kind for m in p.models} == {"band_cap"}
    assert simulate_fiber_transitions(p).passed


def test_label_four_tube_in_dimension_three():
    g = parse_graph("mode general 3\nv 1 0\nv 2 1\nv 3 2\nv 4 3\n"
                    "e 1 1 2 2\ne 2 2 3 4\ne 3 2 3 0\ne 4 3 4 1")
    p = plan(g)
    assert any(t.fiber == FiberType(4) for t in p.tubes)
    assert simulate_fiber_transitions(p).passed


def test_general_condition_enforced():
    g = parse_graph("mode general 2\nv 1 0\nv 2 1\ne 1 1 2 3")
    with pytest.raises(PlanError):
        plan(g)


def test_json_is_stable():
    g = parse_graph(LINE_PATH)
    assert plan_to_json(plan(g)) == plan_to_json(plan(g))
    assert '"kind": "line_transit"' in plan_to_json(plan(g))
