"""Local configurations around a degree-4 vertex x, encoded as constraint templates.

Each template names roles (x, x1..x4 plus structure-specific ones) and lists
required edges, forbidden edges, exact neighbourhoods and exact degrees.
The FIG2_* templates live on a K1,3 neighbourhood centred at x4 (x4 adjacent
to x1, x2, x3); FIG3_*/FIG4_* live on a 4-cycle x1x2x3x4.

The drawings these configurations come from are not available, so every
constraint below is read off the case analysis that produces the
configuration from two crossing 5-cuts.  ``provenance`` records which case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .graph import Graph, NeighborhoodType, classify_neighborhood, components

STAR, C4 = "STAR", "C4"
BASE_ROLES = ("x", "x1", "x2", "x3", "x4")

Roles = Mapping[str, int]


@dataclass(frozen=True)
class StructureTemplate:
    id: str
    base: str
    roles: tuple[str, ...]
    edges: tuple[tuple[str, str], ...] = ()
    non_edges: tuple[tuple[str, str], ...] = ()
    neighborhoods: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    within: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    degrees: Mapping[str, int] = field(default_factory=dict)
    provenance: tuple[str, ...] = ()
    extra: Callable[[Graph, Roles], bool] | None = None

    @property
    def all_roles(self) -> tuple[str, ...]:
        return BASE_ROLES + self.roles

    def all_edges(self) -> list[tuple[str, str]]:
        base = [("x", r) for r in BASE_ROLES[1:]]
        if self.base == STAR:
            base += [("x4", "x1"), ("x4", "x2"), ("x4", "x3")]
        else:
            base += [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x1")]
        nb = [(o, r) for o, rs in self.neighborhoods.items() for r in rs]
        return base + list(self.edges) + nb

    def all_non_edges(self) -> list[tuple[str, str]]:
        if self.base == STAR:
            base = [("x1", "x2"), ("x1", "x3"), ("x2", "x3")]
        else:
            base = [("x1", "x3"), ("x2", "x4")]
        return base + list(self.non_edges)

    def all_degrees(self) -> dict[str, int]:
        d = {"x": 4}
        d.update({o: len(rs) for o, rs in self.neighborhoods.items()})
        d.update(self.degrees)
        return d

    def violations(self, g: Graph, roles: Roles) -> list[str]:
        """Constraints of this template that ``roles`` fails in ``g``."""
        out = []
        missing = [r for r in self.all_roles if r not in roles]
        if missing:
            return [f"unassigned roles {missing}"]
        vals = [roles[r] for r in self.all_roles]
        if len(set(vals)) != len(vals):
            out.append("roles not distinct")
        for a, b in self.all_edges():
            if not g.has_edge(roles[a], roles[b]):
                out.append(f"missing edge {a}{b}")
        for a, b in self.all_non_edges():
            if g.has_edge(roles[a], roles[b]):
                out.append(f"forbidden edge {a}{b}")
        for r, d in self.all_degrees().items():
            if g.degree(roles[r]) != d:
                out.append(f"degree of {r} is {g.degree(roles[r])}, expected {d}")
        for o, rs in self.within.items():
            allowed = {roles[r] for r in rs}
            if not g.adj[roles[o]] <= allowed:
                out.append(f"{o} has neighbours outside {list(rs)}")
        if not out and self.extra is not None and not self.extra(g, roles):
            out.append("separation condition fails")
        return out

    def satisfied_by(self, g: Graph, roles: Roles) -> bool:
        return not self.violations(g, roles)


# --------------------------------------------------------------------------
# the separation condition for the two refinements of FIG3_2


def _fig4_condition(a2_with_x: bool):
    def check(g: Graph, roles: Roles) -> bool:
        cut = [roles[r] for r in ("x", "x3", "x4", "a", "b", "c")]
        comp = {}
        for i, c in enumerate(components(g, cut)):
            for v in c:
                comp[v] = i
        near = {comp[roles["x1"]], comp[roles["x2"]]}
        far = {comp[roles["a1"]], comp[roles["b1"]]}
        if near & far:
            return False
        side_a2 = comp[roles["a2"]]
        return side_a2 not in far if a2_with_x else side_a2 not in near

    return check


_STAR_A = {"a": ("x1", "x2", "x4", "a0")}

TEMPLATES: dict[str, StructureTemplate] = {
    t.id: t
    for t in [
        StructureTemplate(
            "FIG2_1", STAR, ("a", "b"),
            edges=(("a", "b"),),
            neighborhoods={"x3": ("x", "x4", "a", "b")},
            provenance=("K1,3 case |X2|=5, |T1∩F̄2|=1, |T1∩T2|=2 with the two off-diagonal T-cells adjacent",),
        ),
        StructureTemplate(
            "FIG2_2", STAR, ("a", "b"),
            non_edges=(("a", "b"),),
            neighborhoods={"x3": ("x", "x4", "a", "b")},
            provenance=("K1,3 case |X2|=5, T1∩F̄2 empty, so T1∩T2 = N(x3) has four vertices",),
        ),
        StructureTemplate(
            "FIG2_3", STAR, ("a", "a0", "b", "b0", "c", "c0"),
            neighborhoods={**_STAR_A, "b": ("x2", "x4", "a0", "b0"), "c": ("x1", "x4", "a0", "c0")},
            within={"x1": ("x", "x4", "a", "c", "a0", "c0"), "x2": ("x", "x4", "a", "b", "a0", "b0")},
            provenance=("K1,3 case |X2|=5, |T1∩T2|=3, corners F1∩F̄2 and F̄1∩F2 both singletons",),
        ),
        StructureTemplate(
            "FIG2_4", STAR, ("a", "a0", "b", "b0", "c"),
            edges=(("c", "x1"),),
            neighborhoods={**_STAR_A, "b": ("x2", "x4", "a0", "b0")},
            within={"x1": ("x", "x4", "a", "a0", "c")},
            provenance=("K1,3 case |X2|=5, |T1∩T2|=3, corner F1∩F̄2 a singleton and F̄1∩F2 empty",),
        ),
        StructureTemplate(
            "FIG2_5", STAR, ("a", "a0"),
            neighborhoods=dict(_STAR_A),
            provenance=("K1,3 case |X2|≠5, or |X2|=5 with corner F1∩F2 a singleton seeing x1, x2, x4",),
        ),
        StructureTemplate(
            "FIG3_1", C4, ("a", "a1", "c", "b", "b1"),
            neighborhoods={"a": ("x2", "x3", "a1", "c"), "b": ("x1", "x4", "b1", "c")},
            within={"x3": ("x", "x2", "x4", "a", "a1", "c"), "x4": ("x", "x1", "x3", "b", "b1", "c")},
            degrees={"x3": 5, "x4": 5},
            provenance=("C4 case |T1∩T2|=2; x3 and x4 of degree exactly 5",),
        ),
        StructureTemplate(
            "FIG3_2", C4, ("a", "a1", "a2", "b", "b1", "b2"),
            neighborhoods={
                "a": ("x2", "x3", "a1", "a2"),
                "b": ("x1", "x4", "b1", "b2"),
                "x3": ("x", "x2", "x4", "a", "a1"),
                "x4": ("x", "x1", "x3", "b", "b1"),
            },
            provenance=("C4 case |T1∩T2|=1; x3 and x4 of degree exactly 5",),
        ),
    ]
}

for _tid, _with_x in (("FIG4_1", True), ("FIG4_2", False)):
    _base = TEMPLATES["FIG3_2"]
    TEMPLATES[_tid] = StructureTemplate(
        _tid, C4, _base.roles + ("c",),
        neighborhoods=_base.neighborhoods,
        extra=_fig4_condition(_with_x),
        provenance=(
            "FIG3_2 where removing {x, x3, x4, a, b, c} separates {x1, x2} from {a1, b1}, "
            + ("a2 on the x1 side" if _with_x else "a2 on the a1 side"),
        ),
    )

TEMPLATE_IDS = ("FIG2_1", "FIG2_2", "FIG2_3", "FIG2_4", "FIG2_5", "FIG3_1", "FIG3_2", "FIG4_1", "FIG4_2")


# --------------------------------------------------------------------------
# matching


def base_labelings(g: Graph, x: int) -> list[dict[str, int]]:
    """Every assignment of x1..x4 to N(x) compatible with its type.

    K1,3: x4 is the centre, x1, x2, x3 run over the 6 orders of the leaves.
    C4: x1x2x3x4 runs over the 8 ways to walk the cycle.
    """
    t = classify_neighborhood(g, x)
    nb = sorted(g.adj[x])
    out = []
    if t is NeighborhoodType.STAR_K13:
        centre = next(v for v in nb if all(g.has_edge(v, u) for u in nb if u != v))
        leaves = [v for v in nb if v != centre]
        for p in itertools.permutations(leaves):
            out.append({"x": x, "x1": p[0], "x2": p[1], "x3": p[2], "x4": centre})
    elif t is NeighborhoodType.CYCLE_C4:
        for x1 in nb:
            for x2 in sorted(g.adj[x1] & set(nb)):
                x3 = next(v for v in sorted(g.adj[x2] & set(nb)) if v != x1)
                x4 = next(v for v in nb if v not in (x1, x2, x3))
                out.append({"x": x, "x1": x1, "x2": x2, "x3": x3, "x4": x4})
    return out


def _match_from(g: Graph, t: StructureTemplate, base: dict[str, int]) -> Iterator[dict[str, int]]:
    edges = t.all_edges()
    non_edges = t.all_non_edges()
    degrees = t.all_degrees()
    order = t.roles

    def consistent(roles: dict[str, int]) -> bool:
        for a, b in edges:
            if a in roles and b in roles and not g.has_edge(roles[a], roles[b]):
                return False
        for a, b in non_edges:
            if a in roles and b in roles and g.has_edge(roles[a], roles[b]):
                return False
        for r, d in degrees.items():
            if r in roles and g.degree(roles[r]) != d:
                return False
        for o, rs in t.neighborhoods.items():
            if o in roles and all(r in roles for r in rs):
                if g.adj[roles[o]] != {roles[r] for r in rs}:
                    return False
        for o, rs in t.within.items():
            if o in roles and all(r in roles for r in rs):
                if not g.adj[roles[o]] <= {roles[r] for r in rs}:
                    return False
        return True

    def extend(i: int, roles: dict[str, int]) -> Iterator[dict[str, int]]:
        if i == len(order):
            if t.extra is None or t.extra(g, roles):
                yield dict(roles)
            return
        r = order[i]
        used = set(roles.values())
        pool = None
        for a, b in edges:
            other = b if a == r else a if b == r else None
            if other is not None and other in roles:
                nb = g.adj[roles[other]]
                pool = set(nb) if pool is None else pool & nb
        cands = sorted(pool) if pool is not None else range(g.n)
        for v in cands:
            if v in used:
                continue
            roles[r] = v
            if consistent(roles):
                yield from extend(i + 1, roles)
            del roles[r]

    if consistent(dict(base)):
        yield from extend(0, dict(base))


@dataclass(frozen=True)
class StructureMatch:
    template: str
    roles: tuple[tuple[str, int], ...]
    provenance: str = ""

    @property
    def role_map(self) -> dict[str, int]:
        return dict(self.roles)

    def __getitem__(self, role: str) -> int:
        return self.role_map[role]

    def to_json(self) -> dict:
        return {"template": self.template, "roles": self.role_map, "provenance": self.provenance}


def make_match(template: str, roles: Roles, provenance: str = "") -> StructureMatch:
    order = TEMPLATES[template].all_roles
    return StructureMatch(template, tuple((r, roles[r]) for r in order if r in roles), provenance)


def matches_for(g: Graph, x: int, template: str, base: dict[str, int] | None = None) -> list[StructureMatch]:
    t = TEMPLATES[template]
    want = NeighborhoodType.STAR_K13 if t.base == STAR else NeighborhoodType.CYCLE_C4
    if classify_neighborhood(g, x) is not want:
        return []
    bases = [base] if base is not None else base_labelings(g, x)
    out = []
    for b in bases:
        for roles in _match_from(g, t, b):
            out.append(make_match(template, roles, t.provenance[0] if t.provenance else ""))
    return out
