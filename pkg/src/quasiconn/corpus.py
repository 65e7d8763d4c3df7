"""Test-corpus generators, including planted local configurations.

A planted instance places every vertex in one cell of the 3x3 grid cut out
by two 5-cuts T1, T2 through x (rows F1/T1/F̄1, columns F2/T2/F̄2).  Edges
are only ever added between cells that do not lie on opposite sides of
either cut, so T1 and T2 survive every random choice and the two local
4-cuts needed by the search exist by construction.  Random edges are added
first, then edges across offending cuts until the graph is quasi
5-connected; the template constraints are checked at the end.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from .connectivity import is_quasi_k_connected
from .errors import PreconditionError
from .graph import Graph, add_vertex, circulant, complete, components, glue_on, icosahedron
from .templates import TEMPLATES

GENERATORS = ("complete", "circulant", "icosahedron", "random_regular", "planted")


@dataclass(frozen=True)
class CorpusSpec:
    generator: str
    params: dict[str, Any] = field(default_factory=dict)
    count: int = 1
    seed: int = 0
    filters: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "CorpusSpec":
        """``name:key=val,...``; ``count``, ``seed`` and ``filter`` (joined
        with '+') are lifted out of the parameters."""
        name, _, rest = text.partition(":")
        params: dict[str, Any] = {}
        for item in filter(None, rest.split(",")):
            if "=" not in item:
                raise ValueError(f"expected key=value, got {item!r}")
            k, v = item.split("=", 1)
            params[k.strip()] = _coerce(v.strip())
        count = int(params.pop("count", 1))
        seed = int(params.pop("seed", 0))
        filters = tuple(str(params.pop("filter", "")).split("+")) if "filter" in params else ()
        if name not in GENERATORS:
            raise ValueError(f"unknown generator {name!r}")
        return cls(name, params, count, seed, tuple(f for f in filters if f))


def _coerce(v: str):
    if "/" in v:
        return tuple(int(p) for p in v.split("/"))
    try:
        return int(v)
    except ValueError:
        return v


def _passes(g: Graph, filters) -> bool:
    from .connectivity import vertex_connectivity
    from .graph import NeighborhoodType, classify_neighborhood

    for f in filters:
        if f == "kappa4" and vertex_connectivity(g) != 4:
            return False
        if f == "quasi5" and not is_quasi_k_connected(g, 5):
            return False
        if f == "type67":
            kinds = {classify_neighborhood(g, x) for x in g.vertices_of_degree(4)}
            if not kinds & {NeighborhoodType.STAR_K13, NeighborhoodType.CYCLE_C4}:
                return False
    return True


def random_regular(n: int, d: int, seed: int) -> Graph:
    if n * d % 2 or d >= n:
        raise PreconditionError(f"no {d}-regular graph on {n} vertices", "INFEASIBLE")
    h = nx.random_regular_graph(d, n, seed=seed)
    return Graph.from_edges(n, h.edges())


def generate(spec: CorpusSpec) -> list[Graph]:
    p = spec.params
    if spec.generator == "complete":
        out = [complete(int(p.get("n", 7)))]
    elif spec.generator == "circulant":
        jumps = p.get("jumps", (1, 2, 7))
        out = [circulant(int(p.get("n", 14)), jumps if isinstance(jumps, tuple) else (jumps,))]
    elif spec.generator == "icosahedron":
        out = [icosahedron()]
    elif spec.generator == "random_regular":
        n, d = int(p.get("n", 12)), int(p.get("degree", p.get("d", 5)))
        if n * d % 2:
            raise PreconditionError(f"n*d = {n * d} is odd", "INFEASIBLE")
        out = [random_regular(n, d, spec.seed + i) for i in range(spec.count)]
    elif spec.generator == "planted":
        tid = str(p.get("template", "FIG2_1"))
        out = [planted(tid, spec.seed + i).graph for i in range(spec.count)]
    else:
        raise ValueError(f"unknown generator {spec.generator!r}")
    return [g for g in out if _passes(g, spec.filters)]


def standard_corpus(seed: int = 0, n_random: int = 12) -> list[tuple[str, Graph]]:
    """Named graphs for the lemma sweeps.

    5-connected: complete graphs, the icosahedron, 5-regular circulants,
    random 5-regular graphs (kept only if 5-connected).  Quasi 5-connected
    with degree-4 vertices: 5-connected hosts plus pairwise non-adjacent
    new vertices of degree 4, which only create trivial 4-cuts.  Not quasi
    5-connected: two K6 sharing four vertices.
    """
    from .connectivity import vertex_connectivity

    rng = random.Random(f"standard:{seed}")
    out: list[tuple[str, Graph]] = [(f"K{n}", complete(n)) for n in (6, 7, 8)]
    out.append(("icosahedron", icosahedron()))
    for n, jumps in ((10, (1, 2, 5)), (12, (1, 2, 6)), (14, (1, 2, 7)), (16, (1, 2, 8)), (16, (1, 3, 8)), (18, (1, 4, 9))):
        g = circulant(n, jumps)
        if vertex_connectivity(g) >= 5:
            out.append((f"C{n}({','.join(map(str, jumps))})", g))
    k = 0
    while sum(name.startswith("R5_") for name, _ in out) < n_random and k < 10 * n_random:
        n = rng.choice((10, 12, 14, 16, 18))
        g = random_regular(n, 5, rng.randrange(2**31))
        k += 1
        if vertex_connectivity(g) >= 5:
            out.append((f"R5_{n}_{k}", g))
    hosts = list(out)
    for name, g in hosts:
        for extra in (1, 2):
            h = g
            for _ in range(extra):
                h = add_vertex(h, rng.sample(range(g.n), 4))
            out.append((f"{name}+{extra}v4", h))
    out.append(("K6|K6", glue_on(complete(6), complete(6), [0, 1, 2, 3])))
    return out


# --------------------------------------------------------------------------
# planted instances

# cell layouts: role -> (row, column), rows/columns from 'F', 'T', 'B'.
# "R" is a block of filler vertices in the named cell.
_STAR_BASE = {"x": "TT", "x4": "TT", "x1": "TF", "x2": "FT", "x3": "BB"}
_C4_BASE = {"x": "TT", "x1": "TF", "x2": "FT", "x3": "TB", "x4": "BT"}

_LAYOUTS: dict[str, tuple[dict[str, str], str, tuple[int, int]]] = {
    "FIG2_1": ({**_STAR_BASE, "p": "TF", "q": "FT", "a": "TB", "b": "BT"}, "FF", (5, 7)),
    "FIG2_2": ({**_STAR_BASE, "a": "TT", "b": "TT", "c1": "BF", "c2": "FB"}, "FF", (5, 7)),
    "FIG2_3": ({**_STAR_BASE, "a0": "TT", "b0": "TB", "c0": "BT", "a": "FF", "b": "FB", "c": "BF"}, "BB", (3, 5)),
    "FIG2_4": ({**_STAR_BASE, "a0": "TT", "b0": "TB", "c": "BT", "a": "FF", "b": "FB"}, "BB", (4, 6)),
    "FIG2_5": ({**_STAR_BASE, "a0": "TT", "p": "TB", "q": "BT", "a": "FF"}, "BB", (4, 6)),
    "FIG3_1": ({**_C4_BASE, "c": "TT", "b1": "TF", "a1": "FT", "a": "FB", "b": "BF"}, "FF", (4, 6)),
    "FIG3_2": ({**_C4_BASE, "b1": "TF", "b2": "TF", "a1": "FT", "a2": "FT", "a": "FB", "b": "BF"}, "FF", (3, 5)),
}
_LAYOUTS["FIG4_1"] = ({**_LAYOUTS["FIG3_2"][0], "c": "FF"}, "FF", (3, 5))
_LAYOUTS["FIG4_2"] = _LAYOUTS["FIG4_1"]


def _opposite(p: str, q: str) -> bool:
    return {p, q} == {"F", "B"}


@dataclass(frozen=True)
class PlantedInstance:
    template: str
    seed: int
    graph: Graph
    roles: dict[str, int]
    cells: dict[int, str]
    attempts: int

    @property
    def x(self) -> int:
        return self.roles["x"]


def planted(template: str, seed: int, max_attempts: int = 200, p_edge: float = 0.3, p_filler: float = 0.6) -> PlantedInstance:
    """Quasi 5-connected graph containing ``template`` at a known role map.

    Deterministic in ``seed``; raises RuntimeError if no attempt succeeds.
    """
    if template not in TEMPLATES:
        raise ValueError(f"unknown template {template!r}")
    t = TEMPLATES[template]
    layout, filler_cell, (lo, hi) = _LAYOUTS[template]
    rng = random.Random(f"planted:{template}:{seed}")
    for attempt in range(1, max_attempts + 1):
        g, names, cells = _attempt(t, layout, filler_cell, rng.randint(lo, hi), rng, p_edge, p_filler)
        if g is None:
            continue
        roles = {r: names.index(r) for r in t.all_roles}
        if not t.satisfied_by(g, roles) or g.n < 14:
            continue
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        roles = {r: perm[v] for r, v in roles.items()}
        assert t.satisfied_by(h, roles)
        assert is_quasi_k_connected(h, 5)
        return PlantedInstance(template, seed, h, roles, {perm[v]: c for v, c in enumerate(cells)}, attempt)
    raise RuntimeError(f"could not plant {template} with seed {seed}")


def _attempt(t, layout, filler_cell, n_fill, rng, p_edge, p_filler):
    names = list(layout) + [f"R{i}" for i in range(n_fill)]
    cells = [layout.get(nm, filler_cell) for nm in names]
    idx = {nm: i for i, nm in enumerate(names)}
    n = len(names)

    # FIG4 refinements: split the vertices outside S = {x, x3, x4, a, b, c}
    # into a side holding x1, x2 and a side holding a1, b1, with no edges
    # between them.  Inside the grid the filler can only see c and the
    # non-S vertices, so filler and b2 go with a2; anywhere else they would
    # sit behind a nontrivial 4-cut.
    side: dict[int, int] = {}
    if t.id in ("FIG4_1", "FIG4_2"):
        s = {"x", "x3", "x4", "a", "b", "c"}
        for nm in names:
            if nm in s:
                continue
            if nm in ("x1", "x2"):
                side[idx[nm]] = 0
            elif nm in ("a1", "b1"):
                side[idx[nm]] = 1
            else:
                side[idx[nm]] = 0 if t.id == "FIG4_1" else 1

    required = {frozenset((idx[a], idx[b])) for a, b in t.all_edges()}
    forbidden = {frozenset((idx[a], idx[b])) for a, b in t.all_non_edges()}
    closed = {idx[o]: {idx[r] for r in rs} for o, rs in t.neighborhoods.items()}
    closed[idx["x"]] = {idx[r] for r in ("x1", "x2", "x3", "x4")}
    for o, rs in t.within.items():
        allowed = [idx[r] for r in rs]
        want = t.degrees.get(o)
        if want is None:
            closed.setdefault(idx[o], set(allowed))
            continue
        base = {v for e in required if idx[o] in e for v in e if v != idx[o]}
        extra = sorted(set(allowed) - base)
        rng.shuffle(extra)
        closed[idx[o]] = base | set(extra[: want - len(base)])
        required |= {frozenset((idx[o], v)) for v in closed[idx[o]]}

    def allowed(u: int, v: int) -> bool:
        cu, cv = cells[u], cells[v]
        if _opposite(cu[0], cv[0]) or _opposite(cu[1], cv[1]):
            return False
        if frozenset((u, v)) in forbidden:
            return False
        if u in side and v in side and side[u] != side[v]:
            return False
        for a, b in ((u, v), (v, u)):
            if a in closed and b not in closed[a]:
                return False
        return True

    edges = set()
    for e in required:
        u, v = tuple(e)
        if not allowed(u, v):
            raise AssertionError(f"layout forbids required edge {names[u]}{names[v]}")
        edges.add(e)
    for u, v in itertools.combinations(range(n), 2):
        e = frozenset((u, v))
        if e in edges or not allowed(u, v):
            continue
        p = p_filler if names[u].startswith("R") and names[v].startswith("R") else p_edge
        if rng.random() < p:
            edges.add(e)
    for _ in range(4 * n):
        g = Graph.from_edges(n, [tuple(e) for e in edges])
        verdict = is_quasi_k_connected(g, 5)
        if verdict.holds:
            return g, names, cells
        cut = verdict.cut.vertices if verdict.cut is not None else frozenset()
        comps = components(g, cut)
        comp_of = {v: i for i, c in enumerate(comps) for v in c}
        options = [
            (u, v)
            for u, v in itertools.combinations(sorted(comp_of), 2)
            if comp_of[u] != comp_of[v] and not g.has_edge(u, v) and allowed(u, v)
        ]
        if not options:
            return None, names, cells
        edges.add(frozenset(rng.choice(options)))
    return None, names, cells
