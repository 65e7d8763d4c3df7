"""Constructive search for a small quasi 5-contractible subgraph near a
degree-4 vertex whose neighbourhood is K1,3 or C4.

Pipeline for a root x with neighbours labelled x1..x4:

1. take nontrivial 4-cuts T1' of g/xx1 and T2' of g/xx2;
2. lift them to 5-cuts T1, T2 of g with sides F1, F̄1 and F2, F̄2 and form
   the 3x3 grid of intersections (``CrossPartition``);
3. read the configuration off the grid cell sizes (``classify``), match the
   corresponding template, and try that template's contractions in order;
4. if nothing verifies, search every class set with at most three internal
   edges.

Symmetric choices (which leaves are x1 and x2, which cuts, which fragment)
are enumerated explicitly in a fixed order, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .connectivity import (
    Cut,
    FragmentDecomposition,
    fragments,
    is_quasi_k_connected,
    nontrivial_cuts_of_size,
)
from .criticality import (
    ContractibleWitness,
    is_contraction_critical_quasi5,
    is_quasi5_contractible_subgraph,
)
from .errors import PreconditionError, TheoryViolation
from .graph import (
    ClassSet,
    Graph,
    NeighborhoodType,
    canonical_classes,
    classify_neighborhood,
    contract_edge,
    internal_edge_count,
    induced_subgraph,
    merge_class_sets,
)
from .templates import (
    TEMPLATE_IDS,
    TEMPLATES,
    StructureMatch,
    base_labelings,
    matches_for,
)

MIN_ORDER = 14
ROWS = "FTB"  # F, T, F̄


class PipelineError(PreconditionError):
    """Unmet hypothesis of the constructive search; ``code`` says which."""


# --------------------------------------------------------------------------
# cross partition


@dataclass(frozen=True)
class CrossPartition:
    labels: tuple[tuple[str, int], ...]
    T1: frozenset[int]
    F1: frozenset[int]
    B1: frozenset[int]
    T2: frozenset[int]
    F2: frozenset[int]
    B2: frozenset[int]

    @property
    def label_map(self) -> dict[str, int]:
        return dict(self.labels)

    def cell(self, key: str) -> frozenset[int]:
        """``key`` is row then column from 'F', 'T', 'B' (B is the far side),
        e.g. 'TF' is T1 ∩ F2."""
        rows = {"F": self.F1, "T": self.T1, "B": self.B1}
        cols = {"F": self.F2, "T": self.T2, "B": self.B2}
        return rows[key[0]] & cols[key[1]]

    @property
    def cells(self) -> dict[str, frozenset[int]]:
        return {r + c: self.cell(r + c) for r in ROWS for c in ROWS}

    @property
    def X1(self) -> frozenset[int]:
        return self.cell("TF") | self.cell("TT") | self.cell("FT")

    @property
    def X2(self) -> frozenset[int]:
        return self.cell("TF") | self.cell("TT") | self.cell("BT")

    @property
    def X3(self) -> frozenset[int]:
        return self.cell("BT") | self.cell("TT") | self.cell("TB")

    @property
    def X4(self) -> frozenset[int]:
        return self.cell("FT") | self.cell("TT") | self.cell("TB")

    def sizes(self) -> dict[str, int]:
        out = {k: len(v) for k, v in self.cells.items()}
        out.update(X1=len(self.X1), X2=len(self.X2), X3=len(self.X3), X4=len(self.X4))
        return out

    def invariant_failures(self, g: Graph) -> list[str]:
        lab = self.label_map
        out = []
        if len(self.T1) != 5 or len(self.T2) != 5:
            out.append(f"|T1|={len(self.T1)}, |T2|={len(self.T2)}")
        if not {lab["x"], lab["x1"]} <= self.T1 or not {lab["x"], lab["x2"]} <= self.T2:
            out.append("T_i does not contain x and x_i")
        if len(self.X2) + len(self.X4) != 10:
            out.append(f"|X2|+|X4|={len(self.X2) + len(self.X4)}")
        everything = frozenset(range(g.n))
        for name, sep, corner in (("X1", self.X1, "FF"), ("X2", self.X2, "BF"), ("X3", self.X3, "BB"), ("X4", self.X4, "FB")):
            inner = self.cell(corner)
            outer = everything - sep - inner
            if inner and outer and len(sep) < 4:
                out.append(f"{name} separates {corner} with only {len(sep)} vertices")
        return out

    def to_json(self) -> dict:
        return {
            "labels": self.label_map,
            "T1": sorted(self.T1),
            "T2": sorted(self.T2),
            "cells": {k: sorted(v) for k, v in self.cells.items()},
            "sizes": self.sizes(),
        }


def cross_partition(
    g: Graph,
    x: int,
    x1: int,
    x2: int,
    t1p: Cut | Iterable[int],
    t2p: Cut | Iterable[int],
    f1p: Iterable[int],
    f2p: Iterable[int],
    labels: dict[str, int] | None = None,
) -> CrossPartition:
    """Grid of the two lifted cuts.

    ``t1p``/``f1p`` are a cut and fragment of ``g/xx1`` in its own vertex
    ids, likewise ``t2p``/``f2p`` for ``g/xx2``.  Raises TheoryViolation if
    the grid breaks one of its identities.
    """
    sides = []
    for xi, tp, fp in ((x1, t1p, f1p), (x2, t2p, f2p)):
        h, cmap = contract_edge(g, x, xi)
        d = fragments(h, tp)
        merged = cmap.image[x]
        if merged not in d.cut.vertices:
            raise PreconditionError(f"cut {d.cut.sorted()} misses the contracted vertex {merged}", "CUT_MISSES_MERGED")
        fp = frozenset(fp)
        if not d.is_fragment(fp):
            raise PreconditionError(f"{sorted(fp)} is not a fragment of {d.cut.sorted()}", "NOT_A_FRAGMENT")
        lifted = d.lift(cmap)
        f = cmap.expand(fp)
        sides.append((lifted.cut.vertices, f, lifted.rest - f))
    lab = dict(labels) if labels else {"x": x, "x1": x1, "x2": x2}
    cp = CrossPartition(tuple(sorted(lab.items())), *sides[0], *sides[1])
    broken = cp.invariant_failures(g)
    if broken:
        raise TheoryViolation("cross partition invariant broken", {"failures": broken, **cp.to_json()})
    return cp


def classify(cp: CrossPartition, g: Graph, base: str) -> tuple[str | None, str, dict[str, str]]:
    """Configuration forced by the grid; returns (template id, case, role->cell hints)."""
    s = cp.sizes()
    if base == "STAR":
        if s["X2"] != 5:
            return "FIG2_5", "X2 != 5", {"a": "FF"}
        if s["TB"] == 0:
            return "FIG2_2", "X2 = 5, T1∩F̄2 empty", {}
        if s["TB"] != 1:
            return None, f"X2 = 5, |T1∩F̄2| = {s['TB']}", {}
        if s["TT"] == 2 and s["BT"] == 1:
            a, b = next(iter(cp.cell("TB"))), next(iter(cp.cell("BT")))
            if g.has_edge(a, b):
                return "FIG2_1", "X2 = 5, |T1∩T2| = 2, ab edge", {"a": "TB", "b": "BT"}
            return "FIG2_5", "X2 = 5, |T1∩T2| = 2, ab non-edge", {"a": "FF"}
        if s["TT"] == 3:
            hints = {"a": "FF", "a0": "TT"}
            if s["FB"] == 0:
                return "FIG2_5", "X2 = 5, |T1∩T2| = 3, F1∩F̄2 empty", hints
            if s["FB"] == 1 and s["BF"] == 1:
                return "FIG2_3", "X2 = 5, |T1∩T2| = 3, both corners singletons", {
                    **hints, "b": "FB", "b0": "TB", "c": "BF", "c0": "BT"}
            if s["FB"] == 1 and s["BF"] == 0:
                return "FIG2_4", "X2 = 5, |T1∩T2| = 3, F̄1∩F2 empty", {**hints, "b": "FB", "b0": "TB"}
        return None, f"X2 = 5, |T1∩T2| = {s['TT']}", {}
    if s["TT"] == 2:
        return "FIG3_1", "|T1∩T2| = 2", {"a": "FB", "b": "BF", "c": "TT"}
    if s["TT"] == 1:
        return "FIG3_2", "|T1∩T2| = 1", {"a": "FB", "b": "BF"}
    return None, f"|T1∩T2| = {s['TT']}", {}


# --------------------------------------------------------------------------
# matching and candidates


def _require_type(g: Graph, x: int) -> NeighborhoodType:
    t = classify_neighborhood(g, x)
    if t not in (NeighborhoodType.STAR_K13, NeighborhoodType.CYCLE_C4):
        raise PreconditionError(f"neighbourhood of {x} has type {t.name}", "WRONG_TYPE")
    return t


def match_structure(g: Graph, x: int) -> list[StructureMatch]:
    """Every template match rooted at ``x``, in template-id order."""
    _require_type(g, x)
    out = []
    for tid in TEMPLATE_IDS:
        out.extend(matches_for(g, x, tid))
    return out


def _base_of(m: StructureMatch) -> dict[str, int]:
    r = m.role_map
    return {k: r[k] for k in ("x", "x1", "x2", "x3", "x4")}


def _valid(g: Graph, classes: list[frozenset[int]]) -> bool:
    seen: set[int] = set()
    for c in classes:
        if c & seen:
            return False
        seen |= c
        if not induced_subgraph(g, c)[0].is_connected():
            return False
    return 1 <= internal_edge_count(g, classes) <= 3


def candidates_for(g: Graph, match: StructureMatch) -> list[ClassSet]:
    """Contractions suggested by a match, most specific first."""
    r = match.role_map
    t = match.template

    def cls(*names: str) -> frozenset[int]:
        return frozenset(r[n] for n in names)

    out: list[list[frozenset[int]]] = []
    if t in ("FIG2_1", "FIG2_2"):
        out.append([cls("x", "x3")])
    elif t == "FIG2_3":
        out.append([cls("a", "a0"), cls("b", "b0"), cls("c", "c0")])
    elif t == "FIG2_4":
        out.append([cls("a", "a0"), cls("b", "b0")])
        for m in matches_for(g, r["x"], "FIG2_3", _base_of(match)):
            if all(m[k] == r[k] for k in ("a", "a0", "b", "b0")):
                out.append(candidates_for(g, m)[0])
    elif t == "FIG2_5":
        a = cls("a", "a0")
        out.append([a])
        out.append([a, cls("x", "x2")])
        for tid in ("FIG2_4", "FIG2_3"):
            for m in matches_for(g, r["x"], tid, _base_of(match)):
                if m["a"] == r["a"] and m["a0"] == r["a0"]:
                    out.append(list(candidates_for(g, m)[0]))
    elif t == "FIG3_1":
        tri = [cls("x", "x3", "x4")]
        right = [cls("b", "b1"), cls("x", "x3")]
        left = [cls("a", "a1"), cls("x", "x4")]
        if g.has_edge(r["c"], r["x4"]):
            out += [right, tri, left]
        elif g.has_edge(r["c"], r["x3"]):
            out += [left, tri, right]
        else:
            out += [tri, right, left]
    elif t in ("FIG3_2", "FIG4_1", "FIG4_2"):
        tri = [cls("x", "x3", "x4")]
        right = [cls("b", "b2"), cls("b1", "x4"), cls("x", "x1")]
        left = [cls("a", "a2"), cls("a1", "x3"), cls("x", "x2")]
        out += {"FIG3_2": [tri, right, left], "FIG4_1": [right, left, tri], "FIG4_2": [left, right, tri]}[t]
    seen = []
    for c in out:
        key = canonical_classes(c)
        if key not in seen and _valid(g, list(key)):
            seen.append(key)
    return seen


# --------------------------------------------------------------------------
# pipeline


@dataclass
class PipelineResult:
    x: int
    witness: ContractibleWitness | None = None
    route: str = "none"
    template: str | None = None
    match: StructureMatch | None = None
    trace: list[dict] = field(default_factory=list)
    partitions_checked: int = 0
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        w = self.witness
        return {
            "x": self.x,
            "route": self.route,
            "template": self.template,
            "match": self.match.to_json() if self.match else None,
            "witness": None if w is None else {
                "classes": w.as_lists(),
                "internal_edges": w.internal_edges,
                "vertex_count": w.vertex_count,
            },
            "partitions_checked": self.partitions_checked,
            "violations": self.violations,
            "trace": self.trace,
        }


def _local_cuts(g: Graph, x: int, xi: int, res: PipelineResult) -> list[tuple[Cut, FragmentDecomposition]]:
    h, cmap = contract_edge(g, x, xi)
    merged = cmap.image[x]
    out = []
    for cut, _ in nontrivial_cuts_of_size(h, 4):
        if merged not in cut.vertices:
            res.violations.append({"kind": "nontrivial cut of g/xx_i avoids the contracted vertex", "edge": [x, xi], "cut": cut.sorted()})
            continue
        out.append((cut, fragments(h, cut)))
    return out


def _oriented(d: FragmentDecomposition, cmap_image, inside: int, outside: int) -> list[frozenset[int]]:
    """Fragments (in contracted ids) that hold ``inside`` but not ``outside``,
    with both sides of size >= 2 once lifted."""
    a, b = cmap_image[inside], cmap_image[outside]
    return [f for f, fb in d.bipartitions(min_side=1) if a in f and b in fb]


def find_contractible_subgraph(
    g: Graph, x: int, relaxed: bool = False, max_partitions: int = 48
) -> PipelineResult:
    """Find a quasi 5-contractible subgraph with at most three edges near ``x``.

    Raises PipelineError with code TOO_SMALL, WRONG_TYPE, NOT_QUASI5,
    NOT_CRITICAL or (relaxed mode) NO_LOCAL_CUTS.  In strict mode an empty
    result raises TheoryViolation; in relaxed mode it returns with
    ``witness=None``.
    """
    if g.n < MIN_ORDER:
        raise PipelineError(f"graph has {g.n} vertices, need at least {MIN_ORDER}", "TOO_SMALL")
    g._check_vertex(x)
    if g.degree(x) != 4:
        raise PipelineError(f"vertex {x} has degree {g.degree(x)}", "WRONG_TYPE")
    ntype = classify_neighborhood(g, x)
    if ntype not in (NeighborhoodType.STAR_K13, NeighborhoodType.CYCLE_C4):
        raise PipelineError(f"neighbourhood of {x} has type {ntype.name}", "WRONG_TYPE")
    if not is_quasi_k_connected(g, 5):
        raise PipelineError("graph is not quasi 5-connected", "NOT_QUASI5")
    if not relaxed:
        crit = is_contraction_critical_quasi5(g)
        if not crit:
            raise PipelineError(f"edge {crit.edge} is quasi 5-contractible", "NOT_CRITICAL")

    base = "STAR" if ntype is NeighborhoodType.STAR_K13 else "C4"
    res = PipelineResult(x)
    tried: dict[ClassSet, bool] = {}

    def attempt(classes: ClassSet, why: str) -> ContractibleWitness | None:
        if classes in tried:
            return None
        out = is_quasi5_contractible_subgraph(g, classes)
        tried[classes] = bool(out)
        res.trace.append({"step": "candidate", "why": why, "classes": [sorted(c) for c in classes], "ok": bool(out),
                          **({} if out else {"cut": out.verdict.cut.sorted() if out.verdict.cut else None,
                                             "reason": out.verdict.reason})})
        return out if out else None

    cut_cache: dict[int, list] = {}

    def cuts_at(xi: int):
        if xi not in cut_cache:
            cut_cache[xi] = _local_cuts(g, x, xi, res)
        return cut_cache[xi]

    labelings = base_labelings(g, x)
    usable = [lab for lab in labelings if cuts_at(lab["x1"]) and cuts_at(lab["x2"])]
    if not usable:
        if relaxed:
            raise PipelineError("no labelling with nontrivial 4-cuts in both g/xx1 and g/xx2", "NO_LOCAL_CUTS")
        res.violations.append({"kind": "critical graph without the two local cuts"})
    far = "x3" if base == "STAR" else "x4"

    for lab in usable:
        if res.partitions_checked >= max_partitions:
            break
        x1, x2 = lab["x1"], lab["x2"]
        h1_image = contract_edge(g, x, x1)[1].image
        h2_image = contract_edge(g, x, x2)[1].image
        for t1, d1 in cuts_at(x1):
            for t2, d2 in cuts_at(x2):
                f1s = _oriented(d1, h1_image, x2, lab[far])
                f2s = _oriented(d2, h2_image, x1, lab["x3"])
                if not f1s or not f2s:
                    res.violations.append({"kind": "orientation", "labels": lab, "T1'": t1.sorted(), "T2'": t2.sorted()})
                    continue
                for f1 in f1s:
                    for f2 in f2s:
                        if res.partitions_checked >= max_partitions:
                            break
                        res.partitions_checked += 1
                        try:
                            cp = cross_partition(g, x, x1, x2, t1, t2, f1, f2, labels=lab)
                        except TheoryViolation as exc:
                            res.violations.append({"kind": "cross partition", **exc.evidence})
                            continue
                        tid, case, hints = classify(cp, g, base)
                        res.trace.append({"step": "cross_partition", "labels": lab, "sizes": cp.sizes(),
                                          "case": case, "template": tid})
                        if tid is None:
                            continue
                        found = _try_template(g, cp, lab, tid, hints, attempt, res)
                        if found:
                            return found
    res.trace.append({"step": "exhaustive"})
    for cs in merge_class_sets(g, 3):
        w = attempt(cs, "exhaustive")
        if w:
            res.witness, res.route = w, "exhaustive"
            return res
    if not relaxed:
        raise TheoryViolation("no quasi 5-contractible subgraph with at most 3 edges",
                              {"x": x, "edges": g.edges(), "trace": res.trace})
    return res


def _try_template(g, cp, lab, tid, hints, attempt, res) -> PipelineResult | None:
    order = [tid]
    if tid == "FIG3_2":
        order = ["FIG4_1", "FIG4_2", "FIG3_2"]
    for t in order:
        ms = matches_for(g, lab["x"], t, base=dict(lab))
        ms.sort(key=lambda m: -sum(1 for role, key in hints.items() if m[role] in cp.cell(key)))
        if not ms:
            res.trace.append({"step": "match", "template": t, "found": 0})
            continue
        res.trace.append({"step": "match", "template": t, "found": len(ms), "first": ms[0].role_map})
        for m in ms:
            for cs in candidates_for(g, m):
                w = attempt(cs, t)
                if w:
                    res.witness, res.route, res.template, res.match = w, "lemma", t, m
                    return res
    return None
