"""Vertex connectivity, cut enumeration and the quasi-k-connectivity test.

The connectivity number comes from unit-capacity max-flow on the
vertex-split digraph; cuts of a given size are enumerated over bitmasks.
``quasiconn.oracle`` holds an independent brute-force path for both.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import PreconditionError
from .graph import ContractionMap, Graph, components


@dataclass(frozen=True, order=True)
class Cut:
    """A vertex set whose removal disconnects the graph."""

    key: tuple[int, ...] = field(init=False, repr=False)
    vertices: frozenset[int] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "key", (len(self.vertices), tuple(sorted(self.vertices))))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[int]:
        return sorted(self.vertices)


def as_cut(t: Cut | Iterable[int]) -> Cut:
    return t if isinstance(t, Cut) else Cut(frozenset(t))


@dataclass(frozen=True)
class NontrivialityCertificate:
    """Two unions of components, each of at least two vertices."""

    part1: frozenset[int]
    part2: frozenset[int]


@dataclass(frozen=True)
class FragmentDecomposition:
    cut: Cut
    components: tuple[frozenset[int], ...]

    @property
    def rest(self) -> frozenset[int]:
        return frozenset().union(*self.components)

    @property
    def fragment(self) -> frozenset[int]:
        """Default fragment: the smallest component, lexicographically first on ties."""
        return min(self.components, key=lambda c: (len(c), sorted(c)))

    def complement(self, f: Iterable[int]) -> frozenset[int]:
        """``G - T - F`` for a fragment ``F``."""
        f = frozenset(f)
        if not self.is_fragment(f):
            raise PreconditionError(f"{sorted(f)} is not a fragment of this cut", "NOT_A_FRAGMENT")
        return self.rest - f

    def is_fragment(self, f: frozenset[int]) -> bool:
        """A union of at least one but not all components."""
        if not f or f == self.rest:
            return False
        return all(c <= f or not (c & f) for c in self.components)

    def bipartitions(self, min_side: int = 1) -> list[tuple[frozenset[int], frozenset[int]]]:
        """Every ``(F, G-T-F)`` split, smaller side first, in deterministic order."""
        comps = self.components
        out = []
        for r in range(1, len(comps)):
            for pick in itertools.combinations(range(len(comps)), r):
                f = frozenset().union(*(comps[i] for i in pick))
                fb = self.rest - f
                if len(f) >= min_side and len(fb) >= min_side:
                    out.append((f, fb))
        out.sort(key=lambda p: (len(p[0]), sorted(p[0])))
        return out

    def lift(self, cmap: ContractionMap) -> FragmentDecomposition:
        """Same decomposition in the graph before contraction.

        Raises if a merge class would straddle the cut, which cannot happen
        for a decomposition of the contracted graph itself.
        """
        t = cmap.expand(self.cut.vertices)
        comps = tuple(cmap.expand(c) for c in self.components)
        seen = set(t)
        for c in comps:
            if seen & c:
                raise AssertionError("merge class straddles cut and fragment")
            seen |= c
        return FragmentDecomposition(Cut(t), comps)


# --------------------------------------------------------------------------
# bitmask helpers


def _reach(adj: tuple[int, ...], alive: int) -> int:
    """Vertices of ``alive`` reachable from its lowest vertex."""
    seen = alive & -alive
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _split_components(adj: tuple[int, ...], alive: int) -> list[int]:
    out = []
    while alive:
        c = _reach(adj, alive)
        out.append(c)
        alive &= ~c
    return out


def _mask_to_set(m: int) -> frozenset[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return frozenset(out)


# --------------------------------------------------------------------------
# flow


def _local_flow(g: Graph, s: int, t: int, cap: int) -> tuple[int, frozenset[int]]:
    """Max number of internally disjoint s-t paths (stopping at ``cap``) and,
    when below the cap, a minimum separating vertex set."""
    # node 2v = v_in, 2v+1 = v_out; residual capacities in a dict of dicts
    big = g.n + 1
    res: list[dict[int, int]] = [dict() for _ in range(2 * g.n)]
    for v in range(g.n):
        c = big if v in (s, t) else 1
        res[2 * v][2 * v + 1] = c
        res[2 * v + 1].setdefault(2 * v, 0)
        for u in g.adj[v]:
            res[2 * v + 1][2 * u] = big
            res[2 * u].setdefault(2 * v + 1, 0)
    src, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {src: src}
        q = deque([src])
        while q and sink not in parent:
            a = q.popleft()
            for b, c in res[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    q.append(b)
        if sink not in parent:
            break
        b = sink
        while b != src:
            a = parent[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        flow += 1
    if flow >= cap:
        return flow, frozenset()
    reach = set(parent)
    sep = frozenset(v for v in range(g.n) if 2 * v in reach and 2 * v + 1 not in reach)
    return flow, sep


def _min_separator(g: Graph, cap: int | None = None) -> tuple[int, frozenset[int] | None]:
    if g.n < 2:
        raise PreconditionError("vertex connectivity needs at least two vertices", "TOO_SMALL")
    if g.is_complete():
        return g.n - 1, None
    if not g.is_connected():
        return 0, frozenset()
    v = min(range(g.n), key=lambda u: (len(g.adj[u]), u))
    best = len(g.adj[v])
    best_cut = g.adj[v]
    if cap is not None and cap < best:
        best = cap
        best_cut = None
    pairs = [(v, w) for w in range(g.n) if w != v and w not in g.adj[v]]
    nb = sorted(g.adj[v])
    pairs += [(a, b) for a, b in itertools.combinations(nb, 2) if not g.has_edge(a, b)]
    for a, b in pairs:
        f, sep = _local_flow(g, a, b, best)
        if f < best:
            best, best_cut = f, sep
            if best == 0:
                break
    return best, best_cut


def vertex_connectivity(g: Graph) -> int:
    """kappa(g); ``n - 1`` for complete graphs."""
    return _min_separator(g)[0]


def is_k_connected(g: Graph, k: int) -> bool:
    if g.n < 2:
        return False
    return _min_separator(g, cap=k)[0] >= k


def minimum_cut(g: Graph) -> Cut | None:
    """One cut of size kappa(g), or None for complete graphs."""
    k, sep = _min_separator(g)
    return None if sep is None else Cut(sep)


# --------------------------------------------------------------------------
# cut enumeration


def enumerate_cuts_of_size(g: Graph, k: int) -> list[Cut]:
    """All k-subsets S with ``g - S`` disconnected, in canonical order."""
    if k >= g.n:
        raise PreconditionError(f"cut size {k} must be below n={g.n}", "BAD_SIZE")
    if k < 0:
        raise PreconditionError("cut size must be non-negative", "BAD_SIZE")
    adj = g.masks
    full = (1 << g.n) - 1
    bits = [1 << v for v in range(g.n)]
    out = []
    if g.n - k < 2:
        return out
    for combo in itertools.combinations(range(g.n), k):
        s = 0
        for v in combo:
            s |= bits[v]
        alive = full & ~s
        if _reach(adj, alive) != alive:
            out.append(Cut(frozenset(combo)))
    return out


def smallest_cuts(g: Graph) -> list[Cut]:
    """The set of all cuts of size kappa(g)."""
    if g.n < 3:
        raise PreconditionError("smallest cuts need at least three vertices", "TOO_SMALL")
    if g.is_complete():
        raise PreconditionError("complete graphs have no cuts", "COMPLETE")
    return enumerate_cuts_of_size(g, vertex_connectivity(g))


def fragments(g: Graph, t: Cut | Iterable[int]) -> FragmentDecomposition:
    t = as_cut(t)
    for v in t.vertices:
        g._check_vertex(v)
    comps = components(g, t.vertices)
    if len(comps) < 2:
        raise PreconditionError(f"{t.sorted()} is not a cut", "NOT_A_CUT")
    return FragmentDecomposition(t, tuple(comps))


def _certificate(comps: list[frozenset[int]]) -> NontrivialityCertificate | None:
    total = sum(len(c) for c in comps)
    if len(comps) < 2 or total < 4:
        return None
    comps = sorted(comps, key=lambda c: (-len(c), sorted(c)))
    if len(comps[0]) >= 2 and total - len(comps[0]) >= 2:
        part1 = comps[0]
    elif len(comps[0]) == 1:
        part1 = comps[0] | comps[1]
    else:
        return None
    rest = frozenset().union(*comps) - part1
    return NontrivialityCertificate(part1, rest)


def is_nontrivial_cut(g: Graph, t: Cut | Iterable[int]) -> NontrivialityCertificate | None:
    """Certificate that the components of ``g - T`` split into two sides of
    size >= 2, or None when the cut is trivial."""
    return _certificate(list(fragments(g, t).components))


def nontrivial_cuts_of_size(g: Graph, k: int) -> list[tuple[Cut, NontrivialityCertificate]]:
    adj = g.masks
    out = []
    for c in enumerate_cuts_of_size(g, k):
        alive = ((1 << g.n) - 1) & ~sum(1 << v for v in c.vertices)
        cert = _certificate([_mask_to_set(m) for m in _split_components(adj, alive)])
        if cert is not None:
            out.append((c, cert))
    return out


@dataclass(frozen=True)
class QuasiVerdict:
    """Outcome of a quasi-k test.

    ``reason`` is ``"OK"``, ``"CONNECTIVITY"`` (kappa < k-1, ``cut`` is a
    minimum cut or None for a too-small complete graph) or ``"NONTRIVIAL_CUT"``
    (``cut`` is a nontrivial (k-1)-cut with its certificate).
    """

    holds: bool
    k: int
    kappa: int
    reason: str
    cut: Cut | None = None
    certificate: NontrivialityCertificate | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_quasi_k_connected(g: Graph, k: int) -> QuasiVerdict:
    """(k-1)-connected and without nontrivial (k-1)-cuts."""
    if k < 2:
        raise PreconditionError("quasi-k-connectivity needs k >= 2", "BAD_K")
    if g.n < 2:
        raise PreconditionError("quasi-k-connectivity needs at least two vertices", "TOO_SMALL")
    kappa, sep = _min_separator(g, cap=k)
    if kappa < k - 1:
        return QuasiVerdict(False, k, kappa, "CONNECTIVITY", None if sep is None else Cut(sep))
    if kappa >= k:
        return QuasiVerdict(True, k, kappa, "OK")
    adj = g.masks
    full = (1 << g.n) - 1
    for c in enumerate_cuts_of_size(g, k - 1):
        alive = full & ~sum(1 << v for v in c.vertices)
        cert = _certificate([_mask_to_set(m) for m in _split_components(adj, alive)])
        if cert is not None:
            return QuasiVerdict(False, k, kappa, "NONTRIVIAL_CUT", c, cert)
    return QuasiVerdict(True, k, kappa, "OK")
