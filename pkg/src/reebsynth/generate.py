"""Seeded random labeled graphs for property suites and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graph_model import BINARY, GENERAL, Edge, LabeledGraph


def gen_random(budget: int, seed: int = 0, mode: str = BINARY, n: Optional[int] = None,
               all_ones: bool = False, p_one: float = 0.5, max_label: int = 4) -> LabeledGraph:
    """Random connected multigraph with at most ``budget`` vertices.

    Values are small rationals; adjacent vertices never share a value but
    non-adjacent ones may.  In general mode labels range over
    ``0..max_label`` except on edges at degree-1 vertices, which stay in
    ``0..2`` so the instance satisfies the general-mode condition.
    """
    if budget < 2:
        raise ValueError("vertex budget must be at least 2")
    if mode == GENERAL and (n is None or n < 2):
        raise ValueError("general mode needs n >= 2")
    rng = random.Random(seed)
    nv = rng.randint(2, budget)
    pairs: List[Tuple[int, int]] = [(rng.randrange(i), i) for i in range(1, nv)]
    for _ in range(rng.randint(0, nv)):
        u, v = rng.sample(range(nv), 2)
        pairs.append((u, v))

    adj: Dict[int, set] = {v: set() for v in range(nv)}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)

    def draw():
        return Fraction(rng.randint(0, 3 * nv), rng.choice((1, 1, 2, 3)))

    values = {v: draw() for v in range(nv)}
    for v in range(nv):
        while any(values[v] == values[w] for w in adj[v]):
            values[v] = draw()

    degree = {v: 0 for v in range(nv)}
    for u, v in pairs:
        degree[u] += 1
        degree[v] += 1
    edges = []
    for i, (u, v) in enumerate(pairs, start=1):
        if mode == BINARY:
            label = 1 if all_ones or rng.random() < p_one else 0
        else:
            top = 2 if degree[u] == 1 or degree[v] == 1 else max_label
            label = rng.randint(0, top)
        edges.append(Edge(i, u, v, label))
    return LabeledGraph(values, tuple(edges), mode, 1 if mode == BINARY else n)
