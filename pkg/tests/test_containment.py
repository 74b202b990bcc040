import pytest
from hypothesis import given

from conftest import graphs
from oracles import atlas_graphs, nx_contains, nx_contains_at, permutation_contains
from prism_turan.constructions import (
    P62,
    complete,
    complete_bipartite,
    cycle,
    g1,
    h1,
    h2,
    path,
    path_power,
    prism,
    star,
)
from prism_turan.containment import (
    Pattern,
    contains,
    is_embedding,
    is_free,
    is_p4_free,
    prism_free,
    triangles,
)
from prism_turan.graph import disjoint_union, join, make_graph

PATTERNS = {
    "P4": path(4),
    "C3": complete(3),
    "C5": cycle(5),
    "P6^2": path_power(6, 2),
    "prism1": prism(1),
    "star4": star(4),
    "2K2": make_graph(4, [(0, 1), (2, 3)]),
}

SMALL_HOSTS = atlas_graphs(6)


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_agrees_with_networkx_on_all_small_hosts(name):
    pat = Pattern.from_graph(PATTERNS[name], name)
    for host in SMALL_HOSTS:
        emb = contains(host, pat)
        assert (emb is not None) == nx_contains(host, PATTERNS[name]), host
        if emb is not None:
            assert is_embedding(host, PATTERNS[name], emb)


@pytest.mark.parametrize("name", ["P4", "C3", "star4", "prism1"])
def test_anchored_agrees_with_networkx(name):
    pat = Pattern.from_graph(PATTERNS[name], name)
    for host in SMALL_HOSTS:
        if host.n == 0:
            continue
        for anchor in range(host.n):
            emb = contains(host, pat, anchor=anchor)
            assert (emb is not None) == nx_contains_at(host, PATTERNS[name], anchor)
            if emb is not None:
                assert anchor in emb


@given(graphs(max_n=6), graphs(max_n=4))
def test_agrees_with_permutation_brute_force(host, pattern):
    assert (contains(host, pattern) is not None) == permutation_contains(host, pattern)


@given(graphs(max_n=8))
def test_monotone_under_edge_addition(g):
    pat = Pattern.from_graph(prism(1))
    if contains(g, pat) is not None:
        for u, v in g.non_edges():
            assert contains(g.add_edges([(u, v)]), pat) is not None


@given(graphs(max_n=8))
def test_prism_fast_path_matches_generic(g):
    generic = Pattern(prism(1), Pattern.from_graph(prism(1)).search_order,
                      prism(1).degrees, "prism1", "generic")
    assert prism_free(g) == (contains(g, generic) is None)


@given(graphs(max_n=9))
def test_p4_fast_path(g):
    assert is_p4_free(g) == (not nx_contains(g, path(4)))


def test_triangles():
    assert len(triangles(complete(4))) == 4
    assert triangles(cycle(5)) == []


def test_pattern_kind_detection():
    assert Pattern.from_graph(prism(1)).kind == "prism1"
    assert Pattern.from_graph(prism(1).relabel([3, 1, 4, 0, 5, 2])).kind == "prism1"
    assert Pattern.from_graph(path(4)).kind == "p4"
    assert Pattern.from_graph(cycle(5)).kind == "generic"


def test_named_hosts():
    pr = prism(1)
    assert contains(g1(), pr) is None
    assert contains(h1(), pr) is None
    assert contains(h2(), pr) is None
    assert contains(complete(6), pr) is not None
    assert contains(P62, path_power(6, 2)) is not None
    assert is_free(complete_bipartite(5, 5), complete(3))


def test_prism_k2_in_join_of_one_edge_sides():
    side = make_graph(5, [(0, 1)])
    host = join(side, side)
    emb = contains(host, prism(2))
    assert emb is not None and is_embedding(host, prism(2), emb)
    assert contains(join(side, make_graph(5, [])), prism(2)) is None


def test_pattern_larger_than_host():
    assert contains(complete(4), prism(1)) is None
    assert contains(make_graph(0, []), make_graph(0, [])) == ()


def test_disconnected_pattern():
    two_triangles = disjoint_union(complete(3), complete(3))
    assert contains(complete(5), two_triangles) is None
    assert contains(complete(6), two_triangles) is not None


def test_is_embedding_rejects_non_injective():
    assert not is_embedding(complete(3), path(3), (0, 1, 0))
    assert not is_embedding(path(3), complete(3), (0, 1, 2))
