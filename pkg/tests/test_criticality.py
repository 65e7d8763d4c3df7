import pytest

from quasiconn import oracle
from quasiconn.connectivity import is_quasi_k_connected, vertex_connectivity
from quasiconn.criticality import (
    MAX_INTERNAL_EDGES,
    find_quasi5_contractible_edge_in_5connected,
    is_contraction_critical_quasi5,
    is_k_contractible_edge,
    is_quasi5_contractible_edge,
    is_quasi5_contractible_subgraph,
    quasi5_contractible_edges,
)
from quasiconn.errors import PreconditionError
from quasiconn.graph import add_vertex, complete, contract_edge, cycle, glue_on, icosahedron, petersen


def quasi5_graphs(standard):
    return [(name, g) for name, g in standard if oracle.brute_quasi(g, 5)]


def test_single_edge_class_agrees_with_edge_test(standard):
    for name, g in quasi5_graphs(standard)[::3]:
        for u, v in g.edges():
            a = bool(is_quasi5_contractible_edge(g, u, v, assume_quasi5=True))
            b = bool(is_quasi5_contractible_subgraph(g, [{u, v}]))
            assert a == b, (name, u, v)


def test_contractible_edges_match_census(standard):
    for name, g in quasi5_graphs(standard)[::4]:
        if g.n > 16:
            continue
        census = [e.classes[0] for e in oracle.brute_contractible_census(g, 1)]
        assert sorted(tuple(sorted(c)) for c in census) == quasi5_contractible_edges(g), name


def test_witness_and_refutation():
    g = add_vertex(complete(6), [0, 1, 2, 3])
    w = is_quasi5_contractible_subgraph(g, [{0, 6}])
    assert w and w.internal_edges == 1 and w.vertex_count == 2 and w.as_lists() == [[0, 6]]
    assert oracle.brute_quasi(w.contracted, 5)
    # two disjoint pairs of K7 leave K5, which is still quasi 5-connected
    w2 = is_quasi5_contractible_subgraph(complete(7), [{0, 1}, {3, 4}])
    assert w2 and w2.internal_edges == 2 and w2.contracted.n == 5
    tri = is_quasi5_contractible_subgraph(icosahedron(), [{0, 1, 2}])
    assert tri and tri.internal_edges == 3
    # two crossing pairs of the icosahedron leave a 3-cut behind
    r = is_quasi5_contractible_subgraph(icosahedron(), [{0, 1}, {3, 7}])
    assert not r and r.verdict.reason == "CONNECTIVITY"
    assert oracle.brute_kappa(r.contracted) == 3


def test_bad_class_sets():
    with pytest.raises(PreconditionError) as exc:
        is_quasi5_contractible_subgraph(complete(8), [{0, 1, 2}, {3, 4}])
    assert exc.value.code == "BAD_CLASSES"
    with pytest.raises(PreconditionError):
        is_quasi5_contractible_subgraph(complete(8), [{0}])
    assert MAX_INTERNAL_EDGES == 3


def test_requires_quasi5_when_asked():
    g = glue_on(complete(6), complete(6), [0, 1, 2, 3])
    with pytest.raises(PreconditionError) as exc:
        is_quasi5_contractible_edge(g, 0, 1)
    assert exc.value.code == "NOT_QUASI5"
    with pytest.raises(PreconditionError):
        is_contraction_critical_quasi5(g)


def test_k7_is_not_critical():
    v = is_contraction_critical_quasi5(complete(7))
    assert not v and v.edge == (0, 1)


def test_k_contractible_edge():
    assert is_k_contractible_edge(complete(7), 0, 1, 5)
    assert not is_k_contractible_edge(icosahedron(), 0, 1, 5)
    with pytest.raises(PreconditionError):
        is_k_contractible_edge(cycle(5), 0, 1, 5)


def test_five_connected_edge_scan(standard):
    for name, g in standard:
        if g.n >= 2 and vertex_connectivity(g) >= 5:
            u, v = find_quasi5_contractible_edge_in_5connected(g)
            assert oracle.brute_quasi(contract_edge(g, u, v)[0], 5), name
    with pytest.raises(PreconditionError) as exc:
        find_quasi5_contractible_edge_in_5connected(petersen())
    assert exc.value.code == "NOT_5_CONNECTED"


def test_triangle_neighbourhood_edge_is_contractible(standard):
    # fast path version of the contrapositive: a degree-4 vertex seeing a
    # triangle contracts onto its fourth neighbour
    import itertools

    checked = 0
    for name, g in quasi5_graphs(standard):
        for x in g.vertices_of_degree(4):
            nb = sorted(g.adj[x])
            for tri in itertools.combinations(nb, 3):
                if all(g.has_edge(a, b) for a, b in itertools.combinations(tri, 2)):
                    (x4,) = set(nb) - set(tri)
                    assert is_quasi5_contractible_edge(g, x, x4, assume_quasi5=True), (name, x, x4)
                    checked += 1
    assert checked > 0


def test_min_degree_four_contractions_stay_4_connected(standard):
    for name, g in quasi5_graphs(standard)[::2]:
        for u, v in g.edges():
            h, _ = contract_edge(g, u, v)
            if h.min_degree() >= 4:
                assert vertex_connectivity(h) >= 4, (name, u, v)
                assert is_quasi_k_connected(h, 4)
