from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_nx
from hcolor.graph import (
    Graph,
    clique_number,
    components,
    contains_induced,
    is_isomorphic,
    maximal_cliques,
)
from hcolor.named import (
    ante,
    bull,
    complete,
    cycle,
    edgeless,
    gen_p7_counterexample,
    half_graph,
    make_named,
    parse_named,
    path,
    petersen,
    star_subdivision,
    star_subdivision_clique,
    univ,
)
from hcolor.recognition import recognize, split_partition
from hcolor.sampling import SamplingError, sample_in_class


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def test_graph_invariants():
    g = Graph.from_edges(3, [(1, 0), (1, 2)])
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert g.neighbors(1) == frozenset({0, 2})
    assert not g.has_edge(0, 0)
    assert Graph.from_edges(2, [(0, 0)]).loops == frozenset({0})
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_components_examples():
    assert components(Graph.from_edges(0, [])) == []
    assert components(path(3)) == [frozenset({0, 1, 2})]
    assert components(edgeless(2)) == [frozenset({0}), frozenset({1})]


def test_contains_induced_examples():
    assert contains_induced(cycle(5), path(4)) is not None
    assert contains_induced(cycle(4), path(4)) is None
    w = contains_induced(bull(), path(4))
    assert w is not None
    sub, _ = bull().induced(w)
    assert nx.is_isomorphic(to_nx(sub), to_nx(path(4)))


def test_clique_number_examples():
    assert clique_number(complete(4)) == 4
    assert clique_number(cycle(5)) == 2
    assert clique_number(bull()) == 3
    assert clique_number(Graph.from_edges(0, [])) == 0


def test_named_examples():
    assert is_isomorphic(star_subdivision(2), path(5))
    assert is_isomorphic(star_subdivision_clique(1), path(3))
    assert is_isomorphic(half_graph(1), complete(2))
    assert half_graph(4).n == 8
    assert recognize(half_graph(4), "threshold")
    assert petersen().m == 15
    with pytest.raises(ValueError):
        make_named("P", 0)
    with pytest.raises(ValueError):
        make_named("nope", 3)


def test_parse_named():
    assert is_isomorphic(parse_named("2K2"), Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_isomorphic(parse_named("bull"), bull())
    assert parse_named("Q3").n == 6


@pytest.mark.parametrize("k", [1, 2, 3])
def test_half_graph_is_ante_chain(k):
    assert is_isomorphic(half_graph(k + 1), ante(half_graph(k)))


@pytest.mark.parametrize("f", [path(4), cycle(5), bull(), complete(3), half_graph(2)])
def test_ante_contains_univ(f):
    a = ante(f)
    sub, _ = a.induced([v for v in range(a.n) if v != f.n])
    assert is_isomorphic(sub, univ(f))


def test_recognize_examples():
    assert recognize(path(4), "prime")
    assert not recognize(cycle(4), "prime")
    assert not recognize(cycle(5), "split")
    assert recognize(Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), "split")
    assert recognize(cycle(4), "cobipartite")
    assert not recognize(path(4), "cograph")
    assert recognize(cycle(5), "P5-free&bull-free")
    with pytest.raises(ValueError):
        recognize(path(3), "unknown-class")


@given(graphs())
@settings(max_examples=150, deadline=None)
def test_clique_number_matches_networkx(g):
    expected = max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)
    assert clique_number(g) == expected
    if g.n:
        assert sorted(map(sorted, maximal_cliques(g))) == sorted(sorted(c) for c in nx.find_cliques(to_nx(g)))


@given(graphs(7), st.sampled_from([4, 5, 6, 7]))
@settings(max_examples=150, deadline=None)
def test_path_freeness_matches_subset_scan(g, t):
    f = to_nx(path(t))
    expected = any(
        nx.is_isomorphic(to_nx(g).subgraph(s), f) for s in combinations(range(g.n), t)
    )
    assert (contains_induced(g, path(t)) is not None) == expected
    assert recognize(g, f"P{t}-free") == (not expected)


@given(graphs(8))
@settings(max_examples=150, deadline=None)
def test_split_recognition_matches_forbidden_list(g):
    # clique + independent set partitions are exactly the {2K2, C4, C5}-free graphs
    assert (split_partition(g) is not None) == recognize(g, "2K2,C4,C5-free")


@given(graphs(7))
@settings(max_examples=100, deadline=None)
def test_every_graph_is_l_omega_plus_one_free(g):
    w = clique_number(g)
    assert contains_induced(g, star_subdivision_clique(w + 1)) is None


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_p7_counterexample(k):
    g = gen_p7_counterexample(k)
    assert g.n == k * (k + 1)
    assert recognize(g, "P7-free")
    maximum = [c for c in maximal_cliques(g) if len(c) == clique_number(g)]
    # no X of size k - 1 has N[X] meeting every maximum clique
    if k >= 2:
        for x in combinations(range(g.n), k - 1):
            closed = g.closed_neighborhood(x)
            assert not all(c & closed for c in maximum)


@pytest.mark.parametrize(
    "cls",
    ["P5-free", "cograph", "P5-free&bull-free", "split", "cobipartite", "threshold", "P6-free", "P5,Q2-free"],
)
def test_sample_in_class(cls):
    for seed in range(8):
        g = sample_in_class(cls, 8, 0.4, seed)
        assert g.n == 8
        assert recognize(g, cls)
    assert sample_in_class(cls, 8, 0.4, 3) == sample_in_class(cls, 8, 0.4, 3)


def test_sample_connected():
    for seed in range(10):
        g = sample_in_class("P5-free", 9, 0.3, seed, connected=True)
        assert len(components(g)) == 1


def test_sampling_budget():
    with pytest.raises(SamplingError):
        sample_in_class("K2-free", 4, 0.5, 0, connected=True, budget=5)
