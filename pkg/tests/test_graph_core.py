import itertools

import networkx as nx
import pytest
from hypothesis import assume, given, strategies as st

from conftest import graphs
from quasiconn.errors import PreconditionError
from quasiconn.graph import (
    Graph,
    NeighborhoodType,
    canonical_classes,
    circulant,
    classify_four,
    classify_neighborhood,
    complete,
    components,
    contract_edge,
    contract_subgraph,
    cycle,
    icosahedron,
    induced_subgraph,
    internal_edge_count,
    merge_class_sets,
    petersen,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_from_edges_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_duplicate_edges_merge():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
    assert g.m == 2 and g.edges() == [(0, 1), (1, 2)]


def test_constructors():
    ico = icosahedron()
    assert ico.n == 12 and ico.m == 30 and all(ico.degree(v) == 5 for v in range(12))
    assert nx.is_isomorphic(to_nx(ico), nx.icosahedral_graph())
    assert nx.is_isomorphic(to_nx(petersen()), nx.petersen_graph())
    c = circulant(14, (1, 2, 7))
    assert all(c.degree(v) == 5 for v in range(14)) and c.m == 35


def test_bad_vertex():
    with pytest.raises(PreconditionError) as exc:
        complete(3).degree(5)
    assert exc.value.code == "BAD_VERTEX"


def test_components_ordered_by_min():
    g = Graph.from_edges(6, [(4, 5), (0, 1), (2, 3)])
    assert components(g) == [frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})]
    assert components(cycle(6), [0, 3]) == [frozenset({1, 2}), frozenset({4, 5})]


def test_induced_subgraph_map():
    h, back = induced_subgraph(cycle(6), [5, 0, 1])
    assert back == (0, 1, 5) and h.m == 2


def test_contract_errors():
    with pytest.raises(PreconditionError) as exc:
        contract_subgraph(cycle(6), [{0, 1}, {1, 2}])
    assert exc.value.code == "OVERLAPPING_CLASSES"
    with pytest.raises(PreconditionError) as exc:
        contract_subgraph(cycle(6), [{0, 3}])
    assert exc.value.code == "DISCONNECTED_CLASS"
    with pytest.raises(PreconditionError) as exc:
        contract_edge(cycle(6), 0, 2)
    assert exc.value.code == "NOT_AN_EDGE"


def test_contract_triangle_of_k5():
    h, cmap = contract_subgraph(complete(5), [{0, 1, 2}])
    assert h.is_complete() and h.n == 3
    assert cmap.expand([0]) == {0, 1, 2} and cmap.merged() == [0]


def test_compose_maps():
    g = cycle(6)
    h1, m1 = contract_edge(g, 0, 1)
    h2, m2 = contract_edge(h1, 0, 1)
    direct, md = contract_subgraph(g, [{0, 1, 2}])
    assert h2 == direct
    assert m1.compose(m2) == md


@given(graphs(max_n=8), st.data())
def test_edge_contraction_counts(g, data):
    assume(g.m)
    u, v = data.draw(st.sampled_from(g.edges()))
    h, cmap = contract_edge(g, u, v)
    assert h.n == g.n - 1
    assert h.m == g.m - 1 - len(g.adj[u] & g.adj[v])
    assert all(len(c) == 1 for i, c in enumerate(cmap.classes) if i != cmap.image[u])
    assert cmap.image[u] == cmap.image[v]
    assert h == to_graph(nx.contracted_nodes(to_nx(g), u, v, self_loops=False), g.n, u, v)


def to_graph(h, n, u, v):
    # networkx keeps label u for the merged vertex; renumber by smallest member
    old = sorted(h.nodes())
    idx = {w: i for i, w in enumerate(old)}
    return Graph.from_edges(n - 1, [(idx[a], idx[b]) for a, b in h.edges()])


@given(graphs(max_n=6), st.data())
def test_contraction_label_independent(g, data):
    assume(g.m)
    perm = data.draw(st.permutations(range(g.n)))
    u, v = data.draw(st.sampled_from(g.edges()))
    h, _ = contract_edge(g, u, v)
    gp = g.relabel(perm)
    hp, _ = contract_edge(gp, perm[u], perm[v])
    assert nx.is_isomorphic(to_nx(h), to_nx(hp))


def _brute_class_sets(g, max_edges=3):
    """Every family of disjoint connected vertex sets with 1..3 internal edges."""
    sets = []
    for r in range(2, g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            e = internal_edge_count(g, [s])
            if 1 <= e <= max_edges and induced_subgraph(g, s)[0].is_connected():
                sets.append((frozenset(s), e))
    out = set()

    def rec(i, chosen, used, spent):
        if chosen:
            out.add(canonical_classes(chosen))
        for j in range(i, len(sets)):
            s, e = sets[j]
            if not s & used and spent + e <= max_edges:
                rec(j + 1, chosen + [s], used | s, spent + e)

    rec(0, [], frozenset(), 0)
    return out


@given(graphs(max_n=6))
def test_merge_class_sets_complete_and_unique(g):
    got = list(merge_class_sets(g, 3))
    assert len(got) == len(set(got))
    assert set(got) == _brute_class_sets(g)
    totals = [internal_edge_count(g, cs) for cs in got]
    assert totals == sorted(totals)


def test_merge_class_sets_shapes_in_k4():
    kinds = {tuple(sorted(len(c) for c in cs)) for cs in merge_class_sets(complete(4))}
    # single edge, two disjoint edges, a path P3 (in K4 every 3-set is a triangle)
    assert kinds == {(2,), (2, 2), (3,)}


def test_all_64_four_vertex_graphs():
    pairs = list(itertools.combinations(range(4), 2))
    seen = {}
    for bits in range(64):
        es = [p for i, p in enumerate(pairs) if bits >> i & 1]
        t = classify_four(es)
        h = nx.Graph(es)
        h.add_nodes_from(range(4))
        tri = any(all(h.has_edge(a, b) for a, b in itertools.combinations(s, 2)) for s in itertools.combinations(range(4), 3))
        assert (t is NeighborhoodType.K3_PRESENT) == tri
        if not tri:
            seen.setdefault(t, []).append(h)
    assert len(seen) == 7
    for t, hs in seen.items():
        assert all(nx.is_isomorphic(hs[0], h) for h in hs)
    reps = [hs[0] for hs in seen.values()]
    for a, b in itertools.combinations(reps, 2):
        assert not nx.is_isomorphic(a, b)
    assert [t.value for t in sorted(seen, key=lambda t: t.value)] == list(range(1, 8))
    star = nx.star_graph(3)
    c4 = nx.cycle_graph(4)
    assert nx.is_isomorphic(seen[NeighborhoodType.STAR_K13][0], star)
    assert nx.is_isomorphic(seen[NeighborhoodType.CYCLE_C4][0], c4)


@given(graphs(min_n=5, max_n=8), st.data())
def test_classify_matches_triangle_search(g, data):
    deg4 = g.vertices_of_degree(4)
    assume(deg4)
    x = data.draw(st.sampled_from(deg4))
    nb = sorted(g.adj[x])
    tri = any(all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)) for s in itertools.combinations(nb, 3))
    t = classify_neighborhood(g, x)
    assert (t is NeighborhoodType.K3_PRESENT) == tri
    if not tri:
        sub = to_nx(induced_subgraph(g, nb)[0])
        shapes = {
            NeighborhoodType.EMPTY: nx.empty_graph(4),
            NeighborhoodType.STAR_K13: nx.star_graph(3),
            NeighborhoodType.CYCLE_C4: nx.cycle_graph(4),
            NeighborhoodType.PATH_P4: nx.path_graph(4),
        }
        if t in shapes:
            assert nx.is_isomorphic(sub, shapes[t])
        assert sub.number_of_edges() == {1: 0, 2: 1, 3: 2, 4: 2, 5: 3, 6: 3, 7: 4}[t.value]


def test_classify_requires_degree_four():
    with pytest.raises(PreconditionError) as exc:
        classify_neighborhood(complete(6), 0)
    assert exc.value.code == "NOT_DEGREE_4"
