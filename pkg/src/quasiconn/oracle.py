"""Brute-force ground truth.

Every predicate here is decided by enumerating vertex subsets; nothing is
imported from ``connectivity``, ``criticality`` or ``structures`` except
inside ``verify_theorem``, whose job is to cross-check the constructive
search against the census.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _kernels
from .errors import QuasiconnError
from .graph import (
    ClassSet,
    Graph,
    NeighborhoodType,
    classify_neighborhood,
    contract_edge,
    contract_subgraph,
    internal_edge_count,
    merge_class_sets,
)

DEFAULT_BUDGET = 24
PASS, FAIL, SKIPPED, BUDGET = "PASS", "FAIL", "SKIPPED", "BUDGET"


class BudgetExceeded(QuasiconnError):
    pass


def budget() -> int:
    """Largest order the census will handle; ``QUASICONN_BUDGET`` overrides."""
    return int(os.environ.get("QUASICONN_BUDGET", DEFAULT_BUDGET))


def _adj(g: Graph) -> np.ndarray:
    if g.n > _kernels.MAX_N:
        raise BudgetExceeded(f"oracle handles at most {_kernels.MAX_N} vertices")
    return np.array(g.masks, dtype=np.int64)


def _unmask(m: int) -> list[int]:
    return [v for v in range(63) if (m >> v) & 1]


def brute_kappa(g: Graph) -> int:
    """Smallest disconnecting vertex set, ``n - 1`` if none exists."""
    if g.n < 2:
        raise ValueError("kappa needs at least two vertices")
    return int(_kernels.min_disconnecting(_adj(g), g.n))


def brute_cuts(g: Graph, k: int) -> list[frozenset[int]]:
    return sorted(
        (frozenset(_unmask(int(m))) for m in _kernels.all_disconnecting(_adj(g), g.n, k)),
        key=sorted,
    )


def brute_components(g: Graph, removed) -> list[set[int]]:
    gone = set(removed)
    left = [v for v in range(g.n) if v not in gone]
    comps: list[set[int]] = []
    for v in left:
        hit = [c for c in comps if any(u in c for u in g.adj[v])]
        merged = {v}.union(*hit)
        comps = [c for c in comps if c not in hit] + [merged]
    return sorted(comps, key=min)


def brute_nontrivial(g: Graph, t) -> bool:
    """Some grouping of the components of ``g - t`` has both sides >= 2."""
    comps = brute_components(g, t)
    for r in range(1, len(comps)):
        for pick in itertools.combinations(range(len(comps)), r):
            side = sum(len(comps[i]) for i in pick)
            if side >= 2 and g.n - len(set(t)) - side >= 2:
                return True
    return False


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    reason: str
    cut: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def brute_quasi(g: Graph, k: int = 5) -> OracleVerdict:
    """(k-1)-connected with no nontrivial (k-1)-cut, by subset enumeration."""
    if g.n < 2:
        raise ValueError("needs at least two vertices")
    if g.n < k:
        # kappa <= n - 1 < k - 1
        return OracleVerdict(False, "CONNECTIVITY")
    code, mask = _kernels.scan(_adj(g), g.n, k - 2, k - 1)
    if code == 0:
        return OracleVerdict(True, "OK")
    reason = "CONNECTIVITY" if code == 1 else "NONTRIVIAL_CUT"
    return OracleVerdict(False, reason, tuple(_unmask(int(mask))))


@dataclass(frozen=True)
class CensusEntry:
    classes: ClassSet
    internal_edges: int
    vertex_count: int

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.classes]


def brute_contractible_census(
    g: Graph, max_internal_edges: int = 3, check_precondition: bool = True
) -> list[CensusEntry]:
    """Every class set with 1..max internal edges whose contraction is
    quasi 5-connected."""
    if g.n > budget():
        raise BudgetExceeded(f"census budget is n <= {budget()}, graph has {g.n}")
    if check_precondition and not brute_quasi(g, 5):
        raise ValueError("census needs a quasi 5-connected graph")
    out = []
    for cs in merge_class_sets(g, max_internal_edges):
        h, _ = contract_subgraph(g, cs)
        if brute_quasi(h, 5):
            out.append(CensusEntry(cs, internal_edge_count(g, cs), sum(len(c) for c in cs)))
    return out


def brute_contractible_edges(g: Graph) -> list[tuple[int, int]]:
    return [e for e in g.edges() if brute_quasi(contract_edge(g, *e)[0], 5)]


# --------------------------------------------------------------------------
# reports


@dataclass
class CheckResult:
    check: str
    verdict: str
    detail: dict[str, Any] = field(default_factory=dict)
    counterexample: Any = None
    seconds: float = 0.0

    def to_json(self, with_time: bool = True) -> dict[str, Any]:
        out = {"check": self.check, "verdict": self.verdict, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if with_time:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class VerificationReport:
    graph_id: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def verdicts(self) -> list[str]:
        return [c.verdict for c in self.checks]

    def worst(self) -> str:
        order = [PASS, SKIPPED, BUDGET, FAIL, "THEORY_VIOLATION"]
        return max(self.verdicts, key=order.index, default=PASS)

    def to_json(self, with_time: bool = True) -> dict[str, Any]:
        return {"graph": self.graph_id, "checks": [c.to_json(with_time) for c in self.checks]}


def _timed(check: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        res = fn()
    except BudgetExceeded as exc:
        res = CheckResult(check, BUDGET, {"reason": str(exc)})
    res.check = check
    res.seconds = time.perf_counter() - t0
    return res


def _lemma1(g: Graph) -> CheckResult:
    if g.n < 2 or brute_kappa(g) < 5:
        return CheckResult("", SKIPPED, {"hypothesis": "5-connected"})
    for e in g.edges():
        if brute_quasi(contract_edge(g, *e)[0], 5):
            return CheckResult("", PASS, {"edge": list(e)})
    return CheckResult("", FAIL, {"reason": "no edge contraction is quasi 5-connected"}, counterexample=[])


def _triangle_fourth_neighbours(g: Graph, x: int) -> list[int]:
    nb = sorted(g.adj[x])
    out = []
    for tri in itertools.combinations(nb, 3):
        if all(g.has_edge(a, b) for a, b in itertools.combinations(tri, 2)):
            out.extend(v for v in nb if v not in tri)
    return sorted(set(out))


def _lemma2(g: Graph) -> CheckResult:
    if g.n < 2 or not brute_quasi(g, 5):
        return CheckResult("", SKIPPED, {"hypothesis": "quasi 5-connected"})
    pairs = [(x, x4) for x in g.vertices_of_degree(4) for x4 in _triangle_fourth_neighbours(g, x)]
    if not pairs:
        return CheckResult("", SKIPPED, {"hypothesis": "degree-4 vertex with a triangle in its neighbourhood"})
    for x, x4 in pairs:
        v = brute_quasi(contract_edge(g, x, x4)[0], 5)
        if not v:
            return CheckResult("", FAIL, {"x": x, "x4": x4, "reason": v.reason}, counterexample=[x, x4])
    return CheckResult("", PASS, {"edges_checked": len(pairs)})


def _lemma3(g: Graph) -> CheckResult:
    if g.n < 2 or not brute_quasi(g, 5):
        return CheckResult("", SKIPPED, {"hypothesis": "quasi 5-connected"})
    checked = 0
    for e in g.edges():
        h, _ = contract_edge(g, *e)
        if h.min_degree() < 4:
            continue
        checked += 1
        if brute_kappa(h) < 4:
            return CheckResult("", FAIL, {"edge": list(e)}, counterexample=list(e))
    if not checked:
        return CheckResult("", SKIPPED, {"hypothesis": "an edge with min degree >= 4 after contraction"})
    return CheckResult("", PASS, {"edges_checked": checked})


LEMMA_CHECKS = {1: _lemma1, 2: _lemma2, 3: _lemma3}


def verify_lemma(g: Graph, lemma_id: int, graph_id: str = "") -> VerificationReport:
    """Exhaustive check of one of the three preliminary facts.

    1: a 5-connected graph has an edge whose contraction is quasi 5-connected.
    2: in a quasi 5-connected graph, if a degree-4 vertex x sees a triangle
       x1x2x3, then g/xx4 is quasi 5-connected.
    3: in a quasi 5-connected graph, g/xy is 4-connected whenever its minimum
       degree is at least 4.
    """
    if lemma_id not in LEMMA_CHECKS:
        raise ValueError(f"unknown lemma {lemma_id}")
    rep = VerificationReport(graph_id)
    rep.checks.append(_timed(f"lemma{lemma_id}", lambda: LEMMA_CHECKS[lemma_id](g)))
    return rep


THEOREM_TYPES = {1: NeighborhoodType.STAR_K13, 2: NeighborhoodType.CYCLE_C4}


def _theorem(g: Graph, theorem_id: int, relaxed: bool) -> CheckResult:
    from .structures import PipelineError, find_contractible_subgraph

    want = THEOREM_TYPES[theorem_id]
    if g.n < 14:
        return CheckResult("", SKIPPED, {"hypothesis": "at least 14 vertices"})
    if g.n > budget():
        return CheckResult("", BUDGET, {"reason": f"census budget is n <= {budget()}"})
    if not brute_quasi(g, 5):
        return CheckResult("", SKIPPED, {"hypothesis": "quasi 5-connected"})
    roots = [x for x in g.vertices_of_degree(4) if classify_neighborhood(g, x) is want]
    if not roots:
        return CheckResult("", SKIPPED, {"hypothesis": f"degree-4 vertex of type {want.name}"})
    if not relaxed and brute_contractible_edges(g):
        return CheckResult("", SKIPPED, {"hypothesis": "contraction critical"})
    census = brute_contractible_census(g, 3, check_precondition=False)
    keys = {e.classes for e in census}
    last_skip = None
    for x in roots:
        try:
            res = find_contractible_subgraph(g, x, relaxed=relaxed)
        except PipelineError as exc:
            last_skip = exc
            continue
        detail = {"x": x, "census_size": len(census), "route": res.route, "template": res.template}
        if res.witness is None:
            verdict = "THEORY_VIOLATION" if not relaxed else FAIL
            return CheckResult("", verdict, {**detail, "reason": "no witness"}, counterexample={"x": x})
        w = res.witness
        detail["witness"] = w.as_lists()
        detail["internal_edges"] = w.internal_edges
        ok = w.classes in keys and brute_quasi(w.contracted, 5).holds
        if not ok:
            return CheckResult("", FAIL, {**detail, "reason": "witness not confirmed by census"}, counterexample=w.as_lists())
        return CheckResult("", PASS, detail)
    if not census and not relaxed:
        return CheckResult("", "THEORY_VIOLATION", {"reason": "empty census"}, counterexample={})
    return CheckResult("", SKIPPED, {"hypothesis": getattr(last_skip, "code", "pipeline precondition")})


def verify_theorem(g: Graph, theorem_id: int, relaxed: bool = False, graph_id: str = "") -> VerificationReport:
    """Check the census is nonempty and contains the constructive witness.

    Strict mode requires every hypothesis including contraction criticality;
    relaxed mode replaces criticality by the two local nontrivial cuts the
    construction needs.  Unmet hypotheses give SKIPPED.
    """
    if theorem_id not in THEOREM_TYPES:
        raise ValueError(f"unknown theorem {theorem_id}")
    rep = VerificationReport(graph_id)
    name = f"theorem{theorem_id}" + ("_relaxed" if relaxed else "")
    rep.checks.append(_timed(name, lambda: _theorem(g, theorem_id, relaxed)))
    return rep
