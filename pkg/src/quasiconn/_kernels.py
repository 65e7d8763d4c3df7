"""Compiled brute-force subset scans backing ``quasiconn.oracle``.

Graphs are passed as int64 arrays of neighbourhood bitmasks, so n <= 62.
Nothing here looks at flows or at the fast path in ``connectivity``.
"""

import numpy as np
from numba import njit

MAX_N = 62


@njit(cache=True)
def _reach(adj, n, alive):
    start = -1
    for v in range(n):
        if (alive >> v) & 1:
            start = v
            break
    if start < 0:
        return np.int64(0)
    seen = np.int64(1) << start
    frontier = seen
    while frontier != 0:
        nxt = np.int64(0)
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= adj[v]
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


@njit(cache=True)
def _popcount(m):
    c = 0
    while m != 0:
        m &= m - 1
        c += 1
    return c


@njit(cache=True)
def _component_sizes(adj, n, alive):
    sizes = np.zeros(n, dtype=np.int64)
    k = 0
    while alive != 0:
        c = _reach(adj, n, alive)
        sizes[k] = _popcount(c)
        k += 1
        alive &= ~c
    return sizes[:k]


@njit(cache=True)
def _splittable(sizes):
    """Some union of components and its complement both have >= 2 vertices.

    Tries every grouping that keeps component 0 on the first side.
    """
    m = sizes.shape[0]
    total = 0
    for i in range(m):
        total += sizes[i]
    for pick in range(1, 1 << (m - 1)):
        side = sizes[0]
        for i in range(1, m):
            if (pick >> (i - 1)) & 1:
                side += sizes[i]
        if side >= 2 and total - side >= 2:
            return True
    # component 0 alone
    return m >= 2 and sizes[0] >= 2 and total - sizes[0] >= 2


@njit(cache=True)
def _next_subset(c):
    u = c & -c
    v = c + u
    return v + (((v ^ c) // u) >> 2)


@njit(cache=True)
def scan(adj, n, max_small, cut_size):
    """Look for a disconnecting set of size <= max_small, then for one of
    size cut_size with a nontrivial split.

    Returns (code, mask): 0 none found, 1 small cut, 2 nontrivial cut.
    """
    full = (np.int64(1) << n) - 1
    for s in range(0, max_small + 1):
        if n - s < 2:
            break
        if s == 0:
            if _reach(adj, n, full) != full:
                return 1, np.int64(0)
            continue
        c = (np.int64(1) << s) - 1
        while c <= full:
            alive = full & ~c
            if _reach(adj, n, alive) != alive:
                return 1, c
            c = _next_subset(c)
    s = cut_size
    if s >= 1 and n - s >= 2:
        c = (np.int64(1) << s) - 1
        while c <= full:
            alive = full & ~c
            if _reach(adj, n, alive) != alive:
                if _splittable(_component_sizes(adj, n, alive)):
                    return 2, c
            c = _next_subset(c)
    return 0, np.int64(0)


@njit(cache=True)
def min_disconnecting(adj, n):
    """Smallest disconnecting subset size, or n-1 when none exists."""
    full = (np.int64(1) << n) - 1
    if n >= 2 and _reach(adj, n, full) != full:
        return 0
    for s in range(1, n - 1):
        c = (np.int64(1) << s) - 1
        while c <= full:
            alive = full & ~c
            if _reach(adj, n, alive) != alive:
                return s
            c = _next_subset(c)
    return n - 1


@njit(cache=True)
def all_disconnecting(adj, n, s):
    """Masks of every s-subset whose removal disconnects the graph."""
    full = (np.int64(1) << n) - 1
    out = []
    if n - s < 2:
        return out
    if s == 0:
        if _reach(adj, n, full) != full:
            out.append(np.int64(0))
        return out
    c = (np.int64(1) << s) - 1
    while c <= full:
        alive = full & ~c
        if _reach(adj, n, alive) != alive:
            out.append(c)
        c = _next_subset(c)
    return out
