"""Contractibility of edges and small subgraphs with respect to quasi 5-connectivity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .connectivity import QuasiVerdict, is_k_connected, is_quasi_k_connected
from .errors import PreconditionError, TheoryViolation
from .graph import (
    ClassSet,
    ContractionMap,
    Edge,
    Graph,
    canonical_classes,
    contract_edge,
    contract_subgraph,
    internal_edge_count,
)

MAX_INTERNAL_EDGES = 3


@dataclass(frozen=True)
class ContractibleWitness:
    """A subgraph H, given by its merge classes, with ``g/H`` quasi 5-connected."""

    classes: ClassSet
    contracted: Graph
    cmap: ContractionMap
    verdict: QuasiVerdict
    internal_edges: int
    vertex_count: int

    def __post_init__(self):
        assert self.verdict.holds
        assert 1 <= self.internal_edges <= MAX_INTERNAL_EDGES

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.classes]


@dataclass(frozen=True)
class Refutation:
    """A class set whose contraction is not quasi 5-connected; ``verdict``
    carries the small or nontrivial cut."""

    classes: ClassSet
    contracted: Graph
    cmap: ContractionMap
    verdict: QuasiVerdict

    def __bool__(self) -> bool:
        return False


def _require_quasi5(g: Graph) -> None:
    if not is_quasi_k_connected(g, 5):
        raise PreconditionError("graph is not quasi 5-connected", "NOT_QUASI5")


def _require_edge(g: Graph, u: int, v: int) -> None:
    g._check_vertex(u)
    g._check_vertex(v)
    if not g.has_edge(u, v):
        raise PreconditionError(f"{u}{v} is not an edge", "NOT_AN_EDGE")


def is_k_contractible_edge(g: Graph, u: int, v: int, k: int) -> bool:
    _require_edge(g, u, v)
    if g.n < k + 2:
        raise PreconditionError(f"need at least {k + 2} vertices, got {g.n}", "TOO_SMALL")
    h, _ = contract_edge(g, u, v)
    return is_k_connected(h, k)


def is_quasi5_contractible_edge(g: Graph, u: int, v: int, assume_quasi5: bool = False) -> QuasiVerdict:
    """Verdict of the quasi-5 test on ``g/uv``; truthy iff contractible."""
    _require_edge(g, u, v)
    if not assume_quasi5:
        _require_quasi5(g)
    h, _ = contract_edge(g, u, v)
    return is_quasi_k_connected(h, 5)


def is_quasi5_contractible_subgraph(
    g: Graph, classes: Iterable[Iterable[int]], assume_quasi5: bool = True
) -> ContractibleWitness | Refutation:
    """Contract the classes and test the result.

    Returns a witness (truthy) or a refutation (falsy) holding the offending
    cut.  The classes must induce between one and three edges in total.
    """
    cs = canonical_classes(classes)
    inside = internal_edge_count(g, cs)
    if not 1 <= inside <= MAX_INTERNAL_EDGES:
        raise PreconditionError(f"class set has {inside} internal edges, expected 1..3", "BAD_CLASSES")
    if not assume_quasi5:
        _require_quasi5(g)
    h, cmap = contract_subgraph(g, cs)
    verdict = is_quasi_k_connected(h, 5)
    if verdict.holds:
        return ContractibleWitness(cs, h, cmap, verdict, inside, sum(len(c) for c in cs))
    return Refutation(cs, h, cmap, verdict)


@dataclass(frozen=True)
class CriticalityVerdict:
    critical: bool
    edge: Edge | None = None

    def __bool__(self) -> bool:
        return self.critical


def is_contraction_critical_quasi5(g: Graph) -> CriticalityVerdict:
    """True iff no edge of ``g`` is quasi 5-contractible.

    Scans edges in (min, max) order and reports the first contractible one.
    """
    _require_quasi5(g)
    for u, v in g.edges():
        if is_quasi5_contractible_edge(g, u, v, assume_quasi5=True):
            return CriticalityVerdict(False, (u, v))
    return CriticalityVerdict(True)


def quasi5_contractible_edges(g: Graph) -> list[Edge]:
    return [e for e in g.edges() if is_quasi5_contractible_edge(g, *e, assume_quasi5=True)]


def find_quasi5_contractible_edge_in_5connected(g: Graph) -> Edge:
    """An edge ``e`` of a 5-connected graph with ``g/e`` quasi 5-connected.

    Such an edge always exists, so an empty scan raises TheoryViolation.
    """
    if not is_k_connected(g, 5):
        raise PreconditionError("graph is not 5-connected", "NOT_5_CONNECTED")
    for u, v in g.edges():
        h, _ = contract_edge(g, u, v)
        if is_quasi_k_connected(h, 5):
            return (u, v)
    raise TheoryViolation(
        "5-connected graph without a quasi 5-contractible edge",
        {"n": g.n, "edges": g.edges()},
    )
