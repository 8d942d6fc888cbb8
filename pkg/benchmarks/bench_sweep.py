"""Time the level-sweep kernel: compiled vs pure Python.

    python3 benchmarks/bench_sweep.py [--graphs 20] [--budget 16] [--refine 1]

Both backends run the full Reeb computation on the same assembled meshes
and must produce identical graphs.
"""

import argparse
import time

from reebsynth.generate import gen_random
from reebsynth.planner import plan
from reebsynth.reeb import available_backends, build_augmented_reeb, kernel
from reebsynth.surface import assemble


def shape(r):
    return (sorted((n.value, len(n.component.vertices)) for n in r.nodes.values()),
            sorted((e.lo, e.hi, e.fiber.k) for e in r.edges))


class Timed:
    """Wraps a kernel module and accumulates time spent inside it."""

    def __init__(self, mod):
        self.mod, self.seconds = mod, 0.0

    def __getattr__(self, name):
        fn = getattr(self.mod, name)

        def call(*a):
            t0 = time.perf_counter()
            try:
                return fn(*a)
            finally:
                self.seconds += time.perf_counter() - t0
        return call


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--graphs", type=int, default=20)
    ap.add_argument("--budget", type=int, default=16)
    ap.add_argument("--refine", type=int, default=1, help="barycentric refinements per mesh")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    meshes = []
    for seed in range(args.graphs):
        m = assemble(plan(gen_random(args.budget, seed)))
        for _ in range(args.refine):
            m = m.barycentric_refinement()
        meshes.append(m)
    tris = sum(len(m.triangles) for m in meshes)
    print(f"{len(meshes)} meshes, {tris} triangles in total")

    backends = available_backends()
    results, timings = {}, {}
    for b in backends:
        best = inner = float("inf")
        real_get = kernel.get
        for _ in range(args.repeat):
            timed = Timed(real_get(b))
            kernel.get = lambda backend=None: timed
            try:
                t0 = time.perf_counter()
                out = [build_augmented_reeb(m, b) for m in meshes]
                total = time.perf_counter() - t0
            finally:
                kernel.get = real_get
            if total < best:
                best, inner = total, timed.seconds
        results[b], timings[b] = [shape(r) for r in out], inner
        print(f"{b:>7}: end to end {best:.3f} s, inside kernel {inner:.3f} s "
              f"(best of {args.repeat})")
    if len(backends) == 2:
        same = results["python"] == results["cython"]
        print(f"kernel speedup {timings['python'] / timings['cython']:.2f}x, outputs identical: {same}")
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
