"""The eight acceptance criteria, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line; pytest prints them in a final
"acceptance criteria" section.  Running this file directly prints them too.
"""

import random
import time
from dataclasses import replace

import pytest

import conftest
from reebsynth.generate import gen_random
from reebsynth.graph_model import GENERAL, R_CASE_A, R_CASE_B, R_OPEN_CAP, classify_route
from reebsynth.planner import CAP, OPEN_CAP, BAND_CAP, FiberType, plan, \
    simulate_fiber_transitions
from reebsynth.reeb import compute_reeb, level_complex
from reebsynth.surface import assemble
from reebsynth.surface.assemble import synth_model
from reebsynth.verifier import group_micro_levels, isomorphic_labeled, verify_roundtrip
from helpers import K2_0, K2_1, LINE_PATH, THETA, graph, star
from test_reeb import as_labeled

ROUNDTRIP = {}


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    conftest.ACCEPTANCE_LINES[number] = line
    print(line)


def run_criterion(number, title, budget, body):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # reported as a failing line, then re-raised
        record(number, title, False, f"{type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    within = elapsed < budget
    record(number, title, ok and within, f"{detail}; {elapsed:.2f} s of {budget} s")
    assert ok, detail
    assert within, f"took {elapsed:.2f} s, budget {budget} s"


def test_1_handle_count_law():
    def body():
        rng = random.Random(1)
        checked = bad = 0
        while checked < 500:
            a, b, c = rng.randint(1, 5), rng.randint(0, 4), rng.randint(0, 4)
            if (a, b, c) == (1, 0, 0):
                continue
            g = star(in1=a, in0=b, out1=a, out0=c)
            assert classify_route(g)[0].kind == "Saddle"
            model = plan(g).model("v0")
            patch = synth_model(model)
            comps = level_complex(patch.mesh, model.level)
            k_euler = sum(len(x.vertices) - x.segments for x in comps)
            pairs_in_mesh = a - k_euler
            want = a - 1 + b + c
            if not (pairs_in_mesh == patch.identified_pairs == model.one_handles == want
                    and len(comps) == 1):
                bad += 1
            checked += 1
        return bad == 0, f"{checked} saddles, {bad} mismatches"
    run_criterion(1, "handle-count law", 5, body)


@pytest.mark.parametrize("text, chi, closed, name", [
    (K2_0, 2, True, "K2 label 0"), (THETA, 0, True, "theta"), (K2_1, 1, False, "K2 label 1")])
def test_2_canonical_surfaces(text, chi, closed, name):
    def body():
        m = assemble(plan(graph(text)))
        got = m.euler_characteristic()
        ok = (got == chi and (not m.ideal) == closed and m.is_orientable()
              and not m.invariant_violations())
        return ok, f"{name}: chi {got}, ideal edges {len(m.ideal)}"
    key = {"K2 label 0": "2a", "theta": "2b", "K2 label 1": "2c"}[name]
    run_criterion(key, f"canonical surface {name}", 1, body)


def _roundtrips():
    if not ROUNDTRIP:
        start = time.perf_counter()
        for seed in range(200):
            g = gen_random(12, seed)
            ROUNDTRIP[seed] = (g, verify_roundtrip(g))
        ROUNDTRIP["seconds"] = time.perf_counter() - start
    return ROUNDTRIP


def test_3_roundtrip_realizability():
    def body():
        runs = _roundtrips()
        failed = [s for s in range(200) if not runs[s][1].passed]
        # exact value equality and labels are part of a passing match; re-check directly
        for s in range(200):
            g, rep = runs[s]
            if rep.passed:
                assert sorted(rep.mapping) == sorted(g.vertices)
        elapsed = runs["seconds"]
        detail = f"{200 - len(failed)}/200 passed, failing seeds {failed[:10]}"
        return not failed and elapsed < 120, detail + f", pipeline {elapsed:.1f} s"
    run_criterion(3, "round-trip realizability, seeds 0-199", 120, body)


def test_4_closedness_law():
    def body():
        runs = _roundtrips()
        closed_ok = open_ok = n_closed = n_open = 0
        for s in range(200):
            g, rep = runs[s]
            if all(e.label == 0 for e in g.edges):
                n_closed += 1
                closed_ok += rep.info.get("ideal_edges") == 0
            else:
                n_open += 1
                open_ok += rep.info.get("ideal_boundary_paths", 0) >= 2
        ok = closed_ok == n_closed and open_ok == n_open and n_closed > 0
        return ok, (f"{closed_ok}/{n_closed} all-0 closed, "
                    f"{open_ok}/{n_open} with label 1 have >= 2 ideal paths")
    run_criterion(4, "closedness law", 120, body)


def test_5_orientability():
    def body():
        runs = _roundtrips()
        good = sum(bool(runs[s][1].info.get("orientable")) for s in range(200))
        return good == 200, f"{good}/200 orientable"
    run_criterion(5, "orientability", 120, body)


def test_6a_line_path_routes():
    def body():
        g = graph(LINE_PATH)
        kinds = [t.kind for _, t in sorted(classify_route(g).items())]
        rep = verify_roundtrip(g)
        ok = kinds == [R_OPEN_CAP, R_CASE_A, R_OPEN_CAP] and rep.passed
        return ok, f"routes {kinds}, round trip {'pass' if rep.passed else rep.diagnostics}"
    run_criterion("6a", "path 0-[1]-1-[1]-2", 1, body)


def test_6b_transit_stacking():
    def body():
        g = star(in1=1, out1=3, in0=1, out0=0)
        assert classify_route(g)[0].kind == R_CASE_B
        p = plan(g)
        computed = compute_reeb(assemble(p))
        lo, hi = p.collar_interval(0)
        inside = sum(lo <= n.value <= hi for n in computed.nodes.values())
        grouped = group_micro_levels(computed, p)
        rep = isomorphic_labeled(g, grouped)
        ok = inside == 3 and rep.passed and verify_roundtrip(g).passed
        return ok, f"{inside} nodes in the collar grouped to 1, match {rep.passed}"
    run_criterion("6b", "(1,3,1,0) vertex with stacked transits", 1, body)


def test_7_subdivision_invariance():
    def body():
        good = 0
        for seed in range(20):
            m = assemble(plan(gen_random(12, seed)))
            a = compute_reeb(m)
            b = compute_reeb(m.barycentric_refinement())
            good += isomorphic_labeled(as_labeled(a), b).passed
        return good == 20, f"{good}/20 refined meshes match"
    run_criterion(7, "subdivision invariance", 30, body)


def test_8_symbolic_higher_dimension():
    def body():
        passed = mutations = caught = 0
        for seed in range(100):
            n = 2 + seed % 2
            g = gen_random(10, seed, mode=GENERAL, n=n)
            p = plan(g)
            passed += simulate_fiber_transitions(p).passed
            caps = {m.id for m in p.models
                    if m.kind in (CAP, OPEN_CAP, BAND_CAP) and g.degree(m.vertex) == 1}
            for t in p.tubes:
                if t.lower_model in caps or t.upper_model in caps:
                    bad = p.replace_tube(replace(t, fiber=FiberType(t.fiber.k + 1)))
                    mutations += 1
                    caught += not simulate_fiber_transitions(bad).passed
        ok = passed == 100 and mutations > 0 and caught == mutations
        return ok, f"{passed}/100 plans pass, {caught}/{mutations} cap mutations rejected"
    run_criterion(8, "symbolic higher-dimension plans", 10, body)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
