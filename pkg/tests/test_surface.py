from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reebsynth.generate import gen_random
from reebsynth.planner import CIRCLE, LINE, plan
from reebsynth.reeb import level_complex
from reebsynth.surface import (AssemblyError, MeshError, ScalarMesh, assemble, read_rmesh,
                               synth_cap, synth_line_birth, synth_line_cut, synth_line_transit,
                               synth_open_cap, synth_saddle, synth_squared_extremum,
                               synth_tube, write_off, write_rmesh)
from reebsynth.surface.critical import CIRCLE_SIZE, LINE_SIZE
from helpers import K2_0, K2_1, THETA, graph

T, W = Fraction(3), Fraction(1, 8)


def fibers(itfs):
    return [i.fiber for i in itfs]


def k_euler(patch):
    comps = level_complex(patch.mesh, patch.level)
    return sum(len(c.vertices) - c.segments for c in comps)


@pytest.mark.parametrize("a,b,c", [(2, 1, 1), (1, 0, 2), (0, 1, 1), (0, 2, 3), (3, 0, 0),
                                   (1, 1, 0), (0, 3, 1)])
def test_saddle_interfaces_and_pairs(a, b, c):
    p = synth_saddle(a, b, c, T, W)
    assert p.violations() == []
    assert fibers(p.lower) == [LINE] * a + [CIRCLE] * b
    assert fibers(p.upper) == [LINE] * a + [CIRCLE] * c
    expected = a - 1 + b + c if a else (2 if (b, c) == (1, 1) else b + c - 2)
    assert p.identified_pairs == expected
    # independent count from the emitted level set
    assert k_euler(p) == a - expected


def test_torus_minus_two_disks():
    p = synth_saddle(0, 1, 1, T, W)
    assert p.mesh.euler_characteristic() == -2
    comps = level_complex(p.mesh, T)
    assert len(comps) == 1 and len(comps[0].branch_points) == 2


@pytest.mark.parametrize("triple", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)])
def test_forbidden_saddles(triple):
    with pytest.raises(MeshError):
        synth_saddle(*triple, T, W)


@pytest.mark.parametrize("sign", ["min", "max"])
def test_caps(sign):
    p = synth_cap(T, W, sign)
    assert p.mesh.euler_characteristic() == 1 and not p.mesh.ideal
    assert T in p.mesh.values.values()
    side = p.upper if sign == "min" else p.lower
    assert fibers(side) == [CIRCLE]
    lvl = T + W if sign == "min" else T - W
    assert side[0].level == lvl


def test_open_cap_has_fold_tip_and_v_boundary():
    p = synth_open_cap(T, W, "min")
    assert p.mesh.euler_characteristic() == 1
    (comp,) = level_complex(p.mesh, T)
    kinds = sorted(k for _, k in comp.terminals)
    assert kinds == ["fold", "ideal"]


@pytest.mark.parametrize("abc, lower", [
    ((1, 0, 0), [LINE, LINE]),
    ((0, 1, 1), [CIRCLE, CIRCLE]),
    ((2, 1, 1), [LINE, LINE, CIRCLE, LINE, LINE, CIRCLE]),
])
def test_squared_extrema_put_everything_on_one_side(abc, lower):
    p = synth_squared_extremum(*abc, T, W, "max")
    assert fibers(p.lower) == lower and p.upper == []
    assert p.violations() == []
    assert max(p.mesh.values.values()) == T


def test_transit_and_birth_contracts():
    t = synth_line_transit(T, W)
    assert (fibers(t.lower), fibers(t.upper)) == ([LINE], [LINE])
    assert t.mesh.is_orientable()
    b = synth_line_birth(T, W, "birth")
    assert (fibers(b.lower), fibers(b.upper)) == ([LINE], [LINE, LINE])
    d = synth_line_birth(T, W, "death")
    assert (fibers(d.lower), fibers(d.upper)) == ([LINE, LINE], [LINE])
    assert {v: 2 * T - f for v, f in b.mesh.values.items()} == d.mesh.values
    c = synth_line_cut(T, W, "cut")
    assert (fibers(c.lower), fibers(c.upper)) == ([CIRCLE], [LINE])


def test_tubes():
    c = synth_tube(CIRCLE, Fraction(0), Fraction(1))
    assert c.mesh.euler_characteristic() == 0
    assert len(c.lower[0].row) == CIRCLE_SIZE
    ln = synth_tube(LINE, Fraction(0), Fraction(1))
    assert len(ln.lower[0].row) == LINE_SIZE
    paths = ln.mesh.ideal_boundary_paths()
    sides = [p for p in paths if len({ln.mesh.values[v] for v in p}) == 2]
    assert len(sides) == 2
    with pytest.raises(MeshError):
        synth_tube(LINE, Fraction(1), Fraction(1))


@pytest.mark.parametrize("text, chi, closed", [(K2_0, 2, True), (THETA, 0, True),
                                               (K2_1, 1, False)])
def test_canonical_surfaces(text, chi, closed):
    m = assemble(plan(graph(text)))
    assert m.euler_characteristic() == chi
    assert (not m.ideal) == closed
    assert m.invariant_violations() == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_assembled_meshes_are_valid(seed):
    g = gen_random(10, seed)
    m = assemble(plan(g))
    assert m.invariant_violations() == []
    assert (not m.ideal) == all(e.label == 0 for e in g.edges)
    if not m.ideal:
        chi = m.euler_characteristic()
        assert chi % 2 == 0 and chi <= 2


def test_general_plans_are_not_meshed():
    g = graph("mode general 2\nv 1 0\nv 2 1\ne 1 1 2 2")
    with pytest.raises(AssemblyError):
        assemble(plan(g))


def test_rmesh_roundtrip_and_off():
    m = assemble(plan(graph(K2_1)))
    text = write_rmesh(m)
    again = read_rmesh(text)
    assert write_rmesh(again) == text
    assert again.invariant_violations() == []
    off = write_off(m).splitlines()
    assert off[0] == "OFF" and off[1] == f"{len(m.values)} {len(m.triangles)} 0"
    with_coords = read_rmesh(write_rmesh(m, with_coords=True))
    assert with_coords.coords is not None


def test_rmesh_errors():
    with pytest.raises(MeshError):
        read_rmesh("mv 0 0\nmt 0 1 2\n")
    with pytest.raises(MeshError):
        read_rmesh("mv 0 zero\n")


def test_invariant_checker_catches_defects():
    vals = {i: Fraction(i) for i in range(5)}
    m = ScalarMesh.from_triangles(vals, [(0, 1, 2), (0, 2, 3), (0, 2, 4)])
    assert any("3 triangles" in p for p in m.invariant_violations())
    flat = ScalarMesh.from_triangles({0: 0, 1: 0, 2: 0}, [(0, 1, 2)])
    assert any("flat" in p for p in flat.invariant_violations())
