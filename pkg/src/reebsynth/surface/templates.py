"""Mesh templates for every local model kind."""

from __future__ import annotations

from fractions import Fraction

from ..planner import (CIRCLE, FORBIDDEN_TRIPLES, LINE, SQUARED_SPECIALS, FiberType)
from .critical import (CIRCLE_SIZE, LINE_SIZE, Interface, MeshError, Patch,
                       build_patch, mirror, saddle_complex, zipper)
from .mesh import ScalarMesh


def _check_sign(sign):
    if sign not in ("min", "max"):
        raise MeshError(f"sign must be 'min' or 'max', got {sign!r}")


def synth_saddle(a: int, b: int, c: int, level: Fraction, collar: Fraction) -> Patch:
    if (a, b, c) in FORBIDDEN_TRIPLES:
        raise MeshError(f"forbidden saddle triple {(a, b, c)}")
    k, lower, upper, pairs = saddle_complex(a, b, c)
    return build_patch(k, lower, upper, level, collar, identified_pairs=pairs)


def synth_cap(level: Fraction, collar: Fraction, sign: str) -> Patch:
    _check_sign(sign)
    patch = build_patch(1, [], [([0] * 6, True)], level, collar)
    return mirror(patch) if sign == "max" else patch


def synth_open_cap(level: Fraction, collar: Fraction, sign: str) -> Patch:
    # K is a path from the fold tip 0 to the ideal end 3
    _check_sign(sign)
    patch = build_patch(4, [], [([3, 2, 1, 0, 1, 2, 3], False)], level, collar)
    return mirror(patch) if sign == "max" else patch


def synth_squared_extremum(a: int, b: int, c: int, level: Fraction, collar: Fraction,
                           sign: str) -> Patch:
    _check_sign(sign)
    if (a, b, c) == (1, 0, 0):
        k, lower, upper, pairs = 4, [([0, 1, 2, 3], False)], [([0, 1, 2, 3], False)], 0
    elif (a, b, c) == (0, 1, 1):
        ring = list(range(6))
        k, lower, upper, pairs = 6, [(ring, True)], [(ring, True)], 0
    elif (a, b, c) in FORBIDDEN_TRIPLES:
        raise MeshError(f"forbidden squared triple {(a, b, c)}")
    else:
        k, lower, upper, pairs = saddle_complex(a, b, c)
    side = -1 if sign == "max" else 1
    return build_patch(k, lower, upper, level, collar, side, side, pairs)


def synth_line_transit(level: Fraction, collar: Fraction) -> Patch:
    # cycle P a1 a2 Q b1 b2 with tails P-s1-s2-Ep and Q-r1-r2-Eq
    P, a1, a2, Q, b1, b2, s1, s2, Ep, r1, r2, Eq = range(12)
    lower = [Ep, s2, s1, P, a1, a2, Q, b1, b2, P, s1, s2, Ep]
    upper = [Eq, r2, r1, Q, b1, b2, P, a1, a2, Q, r1, r2, Eq]
    return build_patch(12, [(lower, False)], [(upper, False)], level, collar)


def _host(host: FiberType, anchor: int, first: int):
    """Host fiber through ``anchor`` with fresh vertices from ``first``."""
    if host == LINE:
        e1, h1, h2, h3, h4, e2 = range(first, first + 6)
        return [e1, h1, h2, anchor, h3, h4, e2], False, first + 6
    if host == CIRCLE:
        hs = list(range(first, first + 5))
        return [anchor] + hs, True, first + 5
    raise MeshError(f"unsupported host fiber {host}")


def synth_line_birth(level: Fraction, collar: Fraction, sign: str,
                     host: FiberType = LINE) -> Patch:
    """A new line is born out of a fold arc attached to ``host``.

    ``sign='birth'`` gives host -> host + line going up; ``'death'`` mirrors it.
    """
    if sign not in ("birth", "death"):
        raise MeshError(f"sign must be 'birth' or 'death', got {sign!r}")
    p2, c1a, c1b, O, c2a, c2b, t1, t2, E3 = range(9)
    walk, cyclic, k = _host(host, p2, 9)
    loop = [c1a, c1b, O, c2a, c2b, p2]
    i = walk.index(p2)
    lower = walk[:i + 1] + loop + walk[i + 1:]
    new_line = [E3, t2, t1, O, c2a, c2b, p2, c1a, c1b, O, t1, t2, E3]
    patch = build_patch(k, [(lower, cyclic)], [(walk, cyclic), (new_line, False)],
                        level, collar)
    return mirror(patch) if sign == "death" else patch


def synth_line_cut(level: Fraction, collar: Fraction, sign: str) -> Patch:
    """A circle opens into a line (``cut``) or a line closes into a circle."""
    if sign not in ("cut", "close"):
        raise MeshError(f"sign must be 'cut' or 'close', got {sign!r}")
    O, h1, h2, h3, h4, h5, t1, t2, E = range(9)
    ring = [O, h1, h2, h3, h4, h5]
    line = [E, t2, t1, O, h1, h2, h3, h4, h5, O, t1, t2, E]
    patch = build_patch(9, [(ring, True)], [(line, False)], level, collar)
    return mirror(patch) if sign == "close" else patch


def synth_tube(fiber: FiberType, lo: Fraction, hi: Fraction) -> Patch:
    if not lo < hi:
        raise MeshError(f"degenerate tube interval [{lo}, {hi}]")
    if fiber not in (CIRCLE, LINE):
        raise MeshError(f"tubes are realized for circles and lines only, not {fiber}")
    cyclic = fiber == CIRCLE
    size = CIRCLE_SIZE if cyclic else LINE_SIZE
    bottom, top = list(range(size)), list(range(size, 2 * size))
    values = {v: lo for v in bottom}
    values.update({v: hi for v in top})
    mesh = ScalarMesh.from_triangles(values, zipper(bottom, top, cyclic))
    patch = Patch(mesh, (lo + hi) / 2, (hi - lo) / 2,
                  [Interface(fiber, bottom, cyclic, lo)], [Interface(fiber, top, cyclic, hi)])
    patch.mesh.ideal -= patch.interface_edges()
    return patch


__all__ = ["synth_saddle", "synth_cap", "synth_open_cap", "synth_squared_extremum",
           "synth_line_transit", "synth_line_birth", "synth_line_cut", "synth_tube",
           "SQUARED_SPECIALS"]
