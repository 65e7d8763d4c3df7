import pytest

from quasiconn import oracle, structures
from quasiconn.corpus import planted
from quasiconn.criticality import CriticalityVerdict
from quasiconn.errors import PreconditionError, TheoryViolation
from quasiconn.graph import add_vertex, circulant, contract_edge, icosahedron, internal_edge_count, induced_subgraph
from quasiconn.structures import (
    PipelineError,
    candidates_for,
    classify,
    cross_partition,
    find_contractible_subgraph,
    match_structure,
)
from quasiconn.templates import TEMPLATE_IDS, TEMPLATES, base_labelings, make_match, matches_for

SEEDS = range(6)


def planted_partition(p):
    """Cross partition from the cells recorded when the instance was built."""
    g, r = p.graph, p.roles
    row = {v: c[0] for v, c in p.cells.items()}
    col = {v: c[1] for v, c in p.cells.items()}
    out = []
    for xi, side in ((r["x1"], row), (r["x2"], col)):
        h, cmap = contract_edge(g, r["x"], xi)
        t = {cmap.image[v] for v in g_range(g) if side[v] == "T"}
        f = {cmap.image[v] for v in g_range(g) if side[v] == "F"}
        out.append((t, f))
    (t1, f1), (t2, f2) = out
    labels = {k: r[k] for k in ("x", "x1", "x2", "x3", "x4")}
    return cross_partition(g, r["x"], r["x1"], r["x2"], t1, t2, f1, f2, labels=labels)


def g_range(g):
    return range(g.n)


def test_fig2_2_cells():
    for seed in SEEDS:
        cp = planted_partition(planted("FIG2_2", seed))
        s = cp.sizes()
        assert s["TT"] == 4
        assert s["TF"] == s["FT"] == s["BF"] == s["FB"] == s["BB"] == 1
        assert s["X2"] + s["X4"] == 10


@pytest.mark.parametrize("tid", TEMPLATE_IDS)
def test_planted_grid_classifies_as_planted(tid):
    for seed in SEEDS:
        p = planted(tid, seed)
        cp = planted_partition(p)
        assert len(cp.T1) == len(cp.T2) == 5
        base = TEMPLATES[tid].base
        got, _, hints = classify(cp, p.graph, base)
        want = "FIG3_2" if tid.startswith("FIG4") else tid
        assert got == want
        for role, cell in hints.items():
            if role in p.roles:
                assert p.roles[role] in cp.cell(cell), (tid, role, cell)


def test_cut_without_merged_vertex_is_rejected():
    p = planted("FIG2_1", 0)
    r = p.roles
    h, cmap = contract_edge(p.graph, r["x"], r["x1"])
    merged = cmap.image[r["x"]]
    # the neighbourhood of a degree-4 vertex other than the merged one
    other = next(v for v in range(h.n) if v != merged and h.degree(v) == 4 and merged not in h.adj[v])
    with pytest.raises(PreconditionError) as exc:
        cross_partition(p.graph, r["x"], r["x1"], r["x2"], h.adj[other], h.adj[other], {other}, {other})
    assert exc.value.code == "CUT_MISSES_MERGED"


def test_invariant_breach_is_a_theory_violation():
    # a cut of g/xx2 larger than four lifts to |T2| > 5
    p = planted("FIG2_3", 0)
    g, r = p.graph, p.roles
    good = planted_partition(p)
    h1, m1 = contract_edge(g, r["x"], r["x1"])
    t1 = {m1.image[v] for v in good.T1}
    f1 = {m1.image[v] for v in good.F1}
    h2, m2 = contract_edge(g, r["x"], r["x2"])
    merged = m2.image[r["x"]]
    y = min((v for v in range(h2.n) if v != merged and merged not in h2.adj[v]), key=h2.degree)
    with pytest.raises(TheoryViolation) as exc:
        cross_partition(g, r["x"], r["x1"], r["x2"], t1, h2.adj[y] | {merged}, f1, {y})
    assert any(f.startswith("|T1|=5, |T2|=") for f in exc.value.evidence["failures"])


def test_match_structure_fig2_1_roles():
    p = planted("FIG2_1", 1)
    ms = [m for m in match_structure(p.graph, p.x) if m.template == "FIG2_1"]
    expected = {k: p.roles[k] for k in TEMPLATES["FIG2_1"].all_roles}
    assert any(m.role_map == expected for m in ms)
    g, r = p.graph, p.roles
    assert g.adj[r["x3"]] == {r["x"], r["x4"], r["a"], r["b"]} and g.has_edge(r["a"], r["b"])


def test_match_structure_fig3_degrees():
    for seed in SEEDS:
        p = planted("FIG3_1", seed)
        assert p.graph.degree(p.roles["x3"]) == p.graph.degree(p.roles["x4"]) == 5
        assert any(m.template == "FIG3_1" for m in match_structure(p.graph, p.x))


def test_match_structure_empty_and_wrong_type():
    g = add_vertex(circulant(14, (1, 2, 7)), [0, 2, 7, 12])
    assert match_structure(g, 14) == []
    tri = add_vertex(circulant(14, (1, 2, 7)), [0, 1, 2, 3])
    with pytest.raises(PreconditionError) as exc:
        match_structure(tri, 14)
    assert exc.value.code == "WRONG_TYPE"


def test_template_ids_in_order():
    p = planted("FIG2_3", 1)
    ms = match_structure(p.graph, p.x)
    order = [TEMPLATE_IDS.index(m.template) for m in ms]
    assert order == sorted(order)


def test_fig2_1_single_candidate_edge_xx3():
    p = planted("FIG2_1", 0)
    m = make_match("FIG2_1", p.roles)
    assert candidates_for(p.graph, m) == [(frozenset({p.x, p.roles["x3"]}),)]


def _fig3_1_seed(c_x3, c_x4):
    for seed in range(60):
        p = planted("FIG3_1", seed)
        g, r = p.graph, p.roles
        if g.has_edge(r["c"], r["x3"]) == c_x3 and g.has_edge(r["c"], r["x4"]) == c_x4:
            return p
    raise AssertionError("no such seed")


def test_fig3_1_triangle_first_when_c_is_far():
    p = _fig3_1_seed(False, False)
    r = p.roles
    first = candidates_for(p.graph, make_match("FIG3_1", p.roles))[0]
    assert first == (frozenset({r["x"], r["x3"], r["x4"]}),)


def test_fig3_1_pairs_first_when_c_sees_x4():
    p = _fig3_1_seed(False, True)
    r = p.roles
    first = candidates_for(p.graph, make_match("FIG3_1", p.roles))[0]
    assert set(first) == {frozenset({r["b"], r["b1"]}), frozenset({r["x"], r["x3"]})}


def test_fig2_3_candidate_has_three_classes():
    p = planted("FIG2_3", 0)
    r = p.roles
    first = candidates_for(p.graph, make_match("FIG2_3", r))[0]
    assert set(first) == {frozenset({r["a"], r["a0"]}), frozenset({r["b"], r["b0"]}), frozenset({r["c"], r["c0"]})}
    w = structures.is_quasi5_contractible_subgraph(p.graph, first)
    assert w and len(w.classes) == 3 and oracle.brute_quasi(w.contracted)


@pytest.mark.parametrize("tid", TEMPLATE_IDS)
def test_candidates_are_small_and_connected(tid):
    for seed in SEEDS:
        p = planted(tid, seed)
        for m in matches_for(p.graph, p.x, tid):
            for cs in candidates_for(p.graph, m):
                assert 1 <= internal_edge_count(p.graph, cs) <= 3
                assert all(induced_subgraph(p.graph, c)[0].is_connected() for c in cs)
                flat = [v for c in cs for v in c]
                assert len(flat) == len(set(flat))


@pytest.mark.parametrize("tid", TEMPLATE_IDS)
def test_planted_first_candidate_verifies(tid):
    # the contraction the configuration prescribes is quasi 5-connected, by the oracle
    for seed in SEEDS:
        p = planted(tid, seed)
        first = candidates_for(p.graph, make_match(tid, p.roles))[0]
        h = structures.is_quasi5_contractible_subgraph(p.graph, first)
        assert h and oracle.brute_quasi(h.contracted)


def test_pipeline_fig2_1_witness():
    p = planted("FIG2_1", 1)
    res = find_contractible_subgraph(p.graph, p.x, relaxed=True)
    assert res.route == "lemma" and res.template == "FIG2_1"
    assert res.witness.classes == (frozenset({p.x, p.roles["x3"]}),)


def test_pipeline_trace_invariants():
    for tid in TEMPLATE_IDS:
        p = planted(tid, 2)
        res = find_contractible_subgraph(p.graph, p.x, relaxed=True)
        parts = [t for t in res.trace if t["step"] == "cross_partition"]
        assert parts and not res.violations
        for t in parts:
            s = t["sizes"]
            assert s["TF"] + s["TT"] + s["TB"] == 5 and s["FT"] + s["TT"] + s["BT"] == 5
            assert s["X2"] + s["X4"] == 10
        js = res.to_json()
        assert js["witness"]["classes"] == res.witness.as_lists()


def test_pipeline_deterministic():
    p = planted("FIG3_2", 3)
    a = find_contractible_subgraph(p.graph, p.x, relaxed=True).to_json()
    b = find_contractible_subgraph(p.graph, p.x, relaxed=True).to_json()
    assert a == b


def test_pipeline_preconditions():
    c14 = circulant(14, (1, 2, 7))
    with pytest.raises(PipelineError) as exc:
        find_contractible_subgraph(add_vertex(icosahedron(), [0, 2, 6, 9]), 12)
    assert exc.value.code == "TOO_SMALL"
    with pytest.raises(PipelineError) as exc:
        find_contractible_subgraph(add_vertex(c14, [0, 1, 2, 3]), 14)
    assert exc.value.code == "WRONG_TYPE"
    with pytest.raises(PipelineError) as exc:
        find_contractible_subgraph(c14, 0)
    assert exc.value.code == "WRONG_TYPE"
    p = planted("FIG2_1", 0)
    with pytest.raises(PipelineError) as exc:
        find_contractible_subgraph(add_vertex(p.graph, [0, 1]), p.x)
    assert exc.value.code == "NOT_QUASI5"
    with pytest.raises(PipelineError) as exc:
        find_contractible_subgraph(p.graph, p.x)
    assert exc.value.code == "NOT_CRITICAL"
    with pytest.raises(PipelineError) as exc:
        find_contractible_subgraph(add_vertex(c14, [0, 2, 7, 12]), 14, relaxed=True)
    assert exc.value.code == "NO_LOCAL_CUTS"


def test_exhaustive_fallback_and_violation(monkeypatch):
    p = planted("FIG2_1", 0)
    monkeypatch.setattr(structures, "candidates_for", lambda g, m: [])
    res = find_contractible_subgraph(p.graph, p.x, relaxed=True)
    assert res.route == "exhaustive" and res.witness

    real = structures.is_quasi5_contractible_subgraph
    monkeypatch.setattr(structures, "is_contraction_critical_quasi5", lambda g: CriticalityVerdict(True))
    monkeypatch.setattr(structures, "is_quasi5_contractible_subgraph", lambda g, cs: _refute(real(g, cs)))
    with pytest.raises(TheoryViolation):
        find_contractible_subgraph(p.graph, p.x)
    assert find_contractible_subgraph(p.graph, p.x, relaxed=True).witness is None


def _refute(res):
    from quasiconn.criticality import Refutation

    return Refutation(res.classes, res.contracted, res.cmap, res.verdict) if res else res


def test_base_labelings_counts():
    assert len(base_labelings(planted("FIG2_5", 0).graph, planted("FIG2_5", 0).x)) == 6
    p = planted("FIG3_2", 0)
    labs = base_labelings(p.graph, p.x)
    assert len(labs) == 8
    for lab in labs:
        g = p.graph
        assert g.has_edge(lab["x1"], lab["x2"]) and g.has_edge(lab["x3"], lab["x4"]) and not g.has_edge(lab["x1"], lab["x3"])
