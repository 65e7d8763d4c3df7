"""Immutable simple graphs and the contraction operations used throughout.

Vertices are always the dense ids ``0..n-1``.  Every operation that changes
the vertex set (contraction, induced subgraphs) returns a map back to the
original ids so that role names survive the transformation.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError

Edge = tuple[int, int]
ClassSet = tuple[frozenset[int], ...]


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[frozenset[int], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency {v}->{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(frozenset(r) for r in rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as bitmasks, for the hot loops."""
        out = []
        for nbrs in self.adj:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self.adj[v]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def vertices_of_degree(self, d: int) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == d]

    def is_complete(self) -> bool:
        return all(len(a) == self.n - 1 for a in self.adj)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise PreconditionError(f"vertex {v} not in graph of order {self.n}", "BAD_VERTEX")


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def neighbors(g: Graph, v: int) -> frozenset[int]:
    return g.neighbors(v)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``g[s]`` relabelled densely plus the new->old label map."""
    keep = sorted(set(s))
    for v in keep:
        g._check_vertex(v)
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u in keep for v in g.adj[u] if v in index and u < v]
    return Graph.from_edges(len(keep), edges), tuple(keep)


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``g - removed``, ordered by smallest vertex."""
    gone = set(removed)
    seen: set[int] = set()
    out = []
    for s in range(g.n):
        if s in gone or s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in gone and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        out.append(frozenset(comp))
    return out


# --------------------------------------------------------------------------
# contraction


@dataclass(frozen=True)
class ContractionMap:
    """Surjection from the original vertices onto the contracted graph.

    ``classes[i]`` is the set of original vertices merged into new vertex
    ``i``; ``image[v]`` is the new vertex of original vertex ``v``.
    """

    classes: tuple[frozenset[int], ...]
    image: tuple[int, ...]

    def expand(self, vertices: Iterable[int]) -> frozenset[int]:
        """Original vertices behind a set of contracted vertices."""
        out: set[int] = set()
        for w in vertices:
            out |= self.classes[w]
        return frozenset(out)

    def merged(self) -> list[int]:
        """Contracted vertices that stand for two or more originals."""
        return [i for i, c in enumerate(self.classes) if len(c) > 1]

    def compose(self, later: ContractionMap) -> ContractionMap:
        """Map for contracting by ``self`` and then by ``later``."""
        image = tuple(later.image[w] for w in self.image)
        classes = tuple(self.expand(c) for c in later.classes)
        return ContractionMap(classes, image)


def contract_subgraph(g: Graph, classes: Iterable[Iterable[int]]) -> tuple[Graph, ContractionMap]:
    """Identify each class to one vertex, dropping loops and parallel edges.

    Classes must be pairwise disjoint and each class of two or more vertices
    must induce a connected subgraph.  Vertices not named in any class stay
    as singletons.  New ids follow the smallest original member.
    """
    owner: dict[int, int] = {}
    given = [frozenset(c) for c in classes]
    for ci, c in enumerate(given):
        for v in c:
            g._check_vertex(v)
            if v in owner:
                raise PreconditionError(f"vertex {v} occurs in two merge classes", "OVERLAPPING_CLASSES")
            owner[v] = ci
        if len(c) > 1:
            sub, _ = induced_subgraph(g, c)
            if not sub.is_connected():
                raise PreconditionError(f"merge class {sorted(c)} is not connected", "DISCONNECTED_CLASS")
    all_classes = [c for c in given if c] + [frozenset([v]) for v in range(g.n) if v not in owner]
    all_classes.sort(key=min)
    image = [0] * g.n
    for i, c in enumerate(all_classes):
        for v in c:
            image[v] = i
    edges = set()
    for u, v in g.edges():
        a, b = image[u], image[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(all_classes), edges), ContractionMap(tuple(all_classes), tuple(image))


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, ContractionMap]:
    """``g/uv``: delete the edge and identify its ends."""
    g._check_vertex(u)
    g._check_vertex(v)
    if not g.has_edge(u, v):
        raise PreconditionError(f"{u}{v} is not an edge", "NOT_AN_EDGE")
    return contract_subgraph(g, [{u, v}])


def internal_edge_count(g: Graph, classes: Iterable[Iterable[int]]) -> int:
    """Edges of ``g`` with both ends in the same class."""
    total = 0
    for c in classes:
        c = list(c)
        total += sum(1 for u, v in itertools.combinations(c, 2) if g.has_edge(u, v))
    return total


def canonical_classes(classes: Iterable[Iterable[int]]) -> ClassSet:
    """Order-free form of a class set: non-trivial classes sorted by content."""
    cls = [frozenset(c) for c in classes if len(set(c)) > 1]
    return tuple(sorted(cls, key=lambda c: sorted(c)))


def _connected_sets(g: Graph, max_edges: int) -> list[frozenset[int]]:
    """Connected vertex sets of size >= 2 inducing at most ``max_edges`` edges."""
    found: set[frozenset[int]] = set()
    frontier = [frozenset(e) for e in g.edges()] if max_edges >= 1 else []
    found.update(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            inside = internal_edge_count(g, [s])
            reach = set().union(*(g.adj[v] for v in s)) - s
            for w in reach:
                gain = sum(1 for v in s if g.has_edge(v, w))
                if inside + gain <= max_edges:
                    t = s | {w}
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def merge_class_sets(g: Graph, max_internal_edges: int = 3) -> Iterator[ClassSet]:
    """All sets of disjoint connected merge classes with 1..max internal edges.

    Yields canonical class sets, grouped by total internal edge count and in
    lexicographic order within a group.
    """
    pieces = _connected_sets(g, max_internal_edges)
    cost = {p: internal_edge_count(g, [p]) for p in pieces}
    by_total: dict[int, list[ClassSet]] = {k: [] for k in range(1, max_internal_edges + 1)}

    def grow(start: int, chosen: list[frozenset[int]], used: frozenset[int], spent: int):
        if chosen:
            by_total[spent].append(canonical_classes(chosen))
        for i in range(start, len(pieces)):
            p = pieces[i]
            if spent + cost[p] > max_internal_edges or p & used:
                continue
            chosen.append(p)
            grow(i + 1, chosen, used | p, spent + cost[p])
            chosen.pop()

    grow(0, [], frozenset(), 0)
    for k in range(1, max_internal_edges + 1):
        yield from sorted(set(by_total[k]), key=lambda cs: [sorted(c) for c in cs])


# --------------------------------------------------------------------------
# neighborhood types


class NeighborhoodType(enum.Enum):
    """Isomorphism type of the graph induced on the four neighbours of a
    degree-4 vertex.  Values are the type numbers 1..7; ``K3_PRESENT`` marks
    a neighbourhood that contains a triangle and so has no type."""

    EMPTY = 1
    ONE_EDGE = 2
    TWO_DISJOINT_EDGES = 3
    PATH_P3 = 4
    PATH_P4 = 5
    STAR_K13 = 6
    CYCLE_C4 = 7
    K3_PRESENT = 0

    @property
    def triangle_free(self) -> bool:
        return self is not NeighborhoodType.K3_PRESENT


_PAIRS4 = list(itertools.combinations(range(4), 2))


def _code4(edges: Iterable[Edge]) -> int:
    es = {(min(e), max(e)) for e in edges}
    return sum(1 << (5 - i) for i, p in enumerate(_PAIRS4) if p in es)


def canonical_code4(edges: Iterable[Edge]) -> int:
    """Largest 6-bit adjacency code over all relabelings of a 4-vertex graph."""
    es = list(edges)
    return max(_code4((p[u], p[v]) for u, v in es) for p in itertools.permutations(range(4)))


def _has_triangle4(edges: Iterable[Edge]) -> bool:
    es = {(min(e), max(e)) for e in edges}
    return any(
        (a, b) in es and (a, c) in es and (b, c) in es for a, b, c in itertools.combinations(range(4), 3)
    )


def _build_type_table() -> dict[int, NeighborhoodType]:
    """Canonical code -> type, numbering classes by (edge count, code)."""
    reps = {}
    for bits in range(64):
        es = [p for i, p in enumerate(_PAIRS4) if bits >> (5 - i) & 1]
        if _has_triangle4(es):
            continue
        reps[canonical_code4(es)] = len(es)
    ordered = sorted(reps, key=lambda code: (reps[code], code))
    types = [t for t in NeighborhoodType if t.triangle_free]
    assert len(ordered) == len(types) == 7
    return dict(zip(ordered, types))


_TYPE_BY_CODE = _build_type_table()


def classify_four(edges: Iterable[Edge]) -> NeighborhoodType:
    """Type of a graph on vertices {0,1,2,3} given by its edges."""
    es = list(edges)
    if _has_triangle4(es):
        return NeighborhoodType.K3_PRESENT
    return _TYPE_BY_CODE[canonical_code4(es)]


def classify_neighborhood(g: Graph, x: int) -> NeighborhoodType:
    if g.degree(x) != 4:
        raise PreconditionError(f"vertex {x} has degree {g.degree(x)}, expected 4", "NOT_DEGREE_4")
    nb = sorted(g.adj[x])
    return classify_four(
        (i, j) for i, j in itertools.combinations(range(4), 2) if g.has_edge(nb[i], nb[j])
    )


# --------------------------------------------------------------------------
# small constructors used by tests, corpus and CLI


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def circulant(n: int, jumps: Iterable[int]) -> Graph:
    edges = set()
    for i in range(n):
        for j in jumps:
            a, b = i, (i + j) % n
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(n, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def icosahedron() -> Graph:
    # two poles, upper and lower pentagons, antiprism band between them
    edges = []
    for i in range(5):
        up, lo = 1 + i, 6 + i
        edges += [(0, up), (11, lo)]
        edges += [(up, 1 + (i + 1) % 5), (lo, 6 + (i + 1) % 5)]
        edges += [(up, lo), (up, 6 + (i + 4) % 5)]
    return Graph.from_edges(12, edges)


def add_vertex(g: Graph, nbrs: Iterable[int]) -> Graph:
    """``g`` plus one new vertex ``n`` joined to ``nbrs``."""
    return Graph.from_edges(g.n + 1, g.edges() + [(v, g.n) for v in nbrs])


def glue_on(g: Graph, h: Graph, shared: Sequence[int]) -> Graph:
    """Union of ``g`` and ``h`` with ``h``'s first ``len(shared)`` vertices
    identified to ``shared`` in ``g``; ``h``'s other vertices are appended."""
    k = len(shared)
    relabel = {i: shared[i] for i in range(k)}
    for i in range(k, h.n):
        relabel[i] = g.n + i - k
    edges = set(g.edges())
    for u, v in h.edges():
        a, b = relabel[u], relabel[v]
        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(g.n + h.n - k, edges)
