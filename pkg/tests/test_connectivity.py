import networkx as nx
import pytest
from hypothesis import assume, given, strategies as st

from conftest import graphs
from quasiconn import oracle
from quasiconn.connectivity import (
    Cut,
    enumerate_cuts_of_size,
    fragments,
    is_k_connected,
    is_nontrivial_cut,
    is_quasi_k_connected,
    minimum_cut,
    nontrivial_cuts_of_size,
    smallest_cuts,
    vertex_connectivity,
)
from quasiconn.errors import PreconditionError
from quasiconn.graph import Graph, add_vertex, circulant, complete, components, cycle, glue_on, icosahedron, petersen


@given(graphs(max_n=9))
def test_kappa_matches_oracle(g):
    assert vertex_connectivity(g) == oracle.brute_kappa(g)


@given(graphs(min_n=6, max_n=11, p=0.7))
def test_kappa_matches_oracle_dense(g):
    assert vertex_connectivity(g) == oracle.brute_kappa(g)


@given(graphs(max_n=8), st.data())
def test_kappa_label_independent(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    assert vertex_connectivity(g.relabel(perm)) == vertex_connectivity(g)


@given(graphs(max_n=9, p=0.6))
def test_minimum_cut_is_a_cut(g):
    cut = minimum_cut(g)
    if g.is_complete():
        assert cut is None
        return
    assert cut.size == vertex_connectivity(g)
    assert len(components(g, cut.vertices)) >= 2


@given(graphs(min_n=3, max_n=8), st.integers(0, 5))
def test_cut_enumeration_matches_oracle(g, k):
    assume(k < g.n)
    assert [c.vertices for c in enumerate_cuts_of_size(g, k)] == oracle.brute_cuts(g, k)


@given(graphs(min_n=3, max_n=9, p=0.6), st.sampled_from([3, 4, 5]))
def test_quasi_matches_oracle(g, k):
    fast = is_quasi_k_connected(g, k)
    slow = oracle.brute_quasi(g, k)
    assert fast.holds == slow.holds
    if not fast.holds:
        assert fast.reason == slow.reason


@given(graphs(min_n=3, max_n=9, p=0.6))
def test_nontrivial_cut_certificates(g):
    for k in (2, 3):
        if k >= g.n:
            continue
        got = {c.vertices for c, _ in nontrivial_cuts_of_size(g, k)}
        want = {c for c in oracle.brute_cuts(g, k) if oracle.brute_nontrivial(g, c)}
        assert got == want
        for c, cert in nontrivial_cuts_of_size(g, k):
            assert len(cert.part1) >= 2 and len(cert.part2) >= 2
            assert cert.part1 | cert.part2 == frozenset(range(g.n)) - c.vertices


def test_c6_nontrivial_two_cuts():
    assert [c.sorted() for c, _ in nontrivial_cuts_of_size(cycle(6), 2)] == [[0, 3], [1, 4], [2, 5]]
    assert len(enumerate_cuts_of_size(cycle(6), 2)) == 9


@pytest.mark.parametrize("g", [complete(6), complete(7), icosahedron(), circulant(14, (1, 2, 7))])
def test_five_connected_graphs_are_quasi5(g):
    assert is_k_connected(g, 5)
    v = is_quasi_k_connected(g, 5)
    assert v and v.reason == "OK"


def test_two_k6_sharing_four_vertices():
    g = glue_on(complete(6), complete(6), [0, 1, 2, 3])
    v = is_quasi_k_connected(g, 5)
    assert not v and v.reason == "NONTRIVIAL_CUT" and v.cut.sorted() == [0, 1, 2, 3]
    assert v.certificate.part1 == {4, 5} and v.certificate.part2 == {6, 7}


def test_degree_four_vertex_cut_is_trivial():
    g = add_vertex(complete(6), [0, 1, 2, 3])
    assert vertex_connectivity(g) == 4
    assert is_nontrivial_cut(g, [0, 1, 2, 3]) is None
    assert is_quasi_k_connected(g, 5)


def test_small_complete_graphs():
    assert not is_quasi_k_connected(complete(4), 5)
    assert is_quasi_k_connected(complete(5), 5)
    assert vertex_connectivity(complete(5)) == 4


def test_fragments_and_tie_break():
    g = cycle(8)
    d = fragments(g, [0, 4])
    assert d.fragment == frozenset({1, 2, 3})
    assert d.complement(d.fragment) == frozenset({5, 6, 7})
    with pytest.raises(PreconditionError) as exc:
        d.complement({1, 2})
    assert exc.value.code == "NOT_A_FRAGMENT"
    with pytest.raises(PreconditionError) as exc:
        fragments(g, [0, 1])
    assert exc.value.code == "NOT_A_CUT"


def test_smallest_cuts():
    assert len(smallest_cuts(petersen())) == 10
    with pytest.raises(PreconditionError):
        smallest_cuts(complete(5))
    with pytest.raises(PreconditionError):
        enumerate_cuts_of_size(cycle(4), 4)


def test_cut_ordering():
    cuts = sorted([Cut(frozenset({3, 4})), Cut(frozenset({0, 1, 2})), Cut(frozenset({1, 2}))])
    assert [c.sorted() for c in cuts] == [[1, 2], [3, 4], [0, 1, 2]]


def test_networkx_agrees_on_corpus(standard):
    for name, g in standard:
        h = nx.Graph(g.edges())
        assert vertex_connectivity(g) == nx.node_connectivity(h), name
