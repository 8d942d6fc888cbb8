"""Pure-Python sweep kernel; mirrors ``_sweep.pyx`` exactly."""

import numpy as np


def level_segments(tv, te, drank, n_vertices):
    """Intersect every triangle with every doubled level it spans.

    ``tv`` holds triangle vertex ids, ``te`` the edge ids of the sides
    (ab, bc, ca), ``drank`` twice the value rank of each vertex.  Items are
    vertex ids, or ``n_vertices + edge id`` for an edge crossing the level.
    Returns ``(seg_level, seg_a, seg_b, pt_level, pt_item)``.
    """
    seg_l, seg_a, seg_b, pt_l, pt_i = [], [], [], [], []
    tv = np.asarray(tv).tolist()
    te = np.asarray(te).tolist()
    drank = np.asarray(drank).tolist()
    for (a, b, c), (eab, ebc, eca) in zip(tv, te):
        ra, rb, rc = drank[a], drank[b], drank[c]
        lo = min(ra, rb, rc)
        hi = max(ra, rb, rc)
        sides = ((ra, rb, eab), (rb, rc, ebc), (rc, ra, eca))
        for lev in range(lo, hi + 1):
            items = []
            if ra == lev:
                items.append(a)
            if rb == lev:
                items.append(b)
            if rc == lev:
                items.append(c)
            for r0, r1, e in sides:
                if (r0 < lev < r1) or (r1 < lev < r0):
                    items.append(n_vertices + e)
            if len(items) == 2:
                x, y = items
                if x > y:
                    x, y = y, x
                seg_l.append(lev)
                seg_a.append(x)
                seg_b.append(y)
            elif len(items) == 1:
                pt_l.append(lev)
                pt_i.append(items[0])
    as_arr = lambda xs: np.asarray(xs, dtype=np.int64)
    return as_arr(seg_l), as_arr(seg_a), as_arr(seg_b), as_arr(pt_l), as_arr(pt_i)


def union_find_labels(n, a, b):
    """Root label for each of ``n`` nodes after joining every pair (a[i], b[i])."""
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for x, y in zip(np.asarray(a).tolist(), np.asarray(b).tolist()):
        rx, ry = find(x), find(y)
        if rx != ry:
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry
    return np.asarray([find(x) for x in range(n)], dtype=np.int64)
