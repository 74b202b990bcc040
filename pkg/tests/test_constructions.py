from math import comb

import pytest

from prism_turan.canon import canonical_bytes, is_isomorphic
from prism_turan.constructions import (
    CONSTRUCTION_NAMES,
    P62,
    P62_NON_EDGES,
    TYPE_1,
    TYPE_4,
    ConstructionSpec,
    build,
    complete_bipartite,
    cycle,
    f_construction,
    f_star_sizes,
    g1,
    g2,
    g3,
    h1,
    h2,
    h3,
    h4,
    h_construction,
    main_extremal,
    p4_extremal_family,
    path_cliques,
    path_join,
    path_power,
    prism,
    star,
    turan_graph,
)
from prism_turan.containment import is_free, prism_free
from prism_turan.graph import GraphError, chromatic_number, complement, join


def test_prism_shape():
    for k in (1, 2, 3):
        g = prism(k)
        assert g.n == 2 * (2 * k + 1)
        assert g.edge_count == 3 * (2 * k + 1)
        assert set(g.degrees) == {3}
        assert chromatic_number(g) == 3


def test_prism_1_is_complement_of_c6():
    assert is_isomorphic(prism(1), complement(cycle(6)))


def test_path_power():
    assert P62.edge_count == 9
    assert sorted(P62.non_edges()) == sorted(P62_NON_EDGES)
    assert path_power(4, 2).edge_count == 5
    assert path_power(5, 4).edge_count == 10  # p >= k-1 gives K_k


@pytest.mark.parametrize("n,r", [(7, 2), (10, 3), (5, 5), (8, 1)])
def test_turan_graph(n, r):
    g = turan_graph(n, r)
    sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
    assert g.edge_count == comb(n, 2) - sum(comb(s, 2) for s in sizes)
    assert chromatic_number(g) == (min(n, r) if n else 0)


def test_h_edge_count():
    for n in range(3, 14):
        for i in range(0, n + 1, 3):
            assert h_construction(n, i).edge_count == i * (n - i) + i


def test_f_edge_count():
    for n in range(2, 14):
        for i in range(1, n + 1):
            if i % 3 == 0:
                continue
            for j in f_star_sizes(i):
                assert f_construction(n, i, j).edge_count == i * (n - i) + (j - 1) + (i - j)


@pytest.mark.parametrize("args", [(6, 2), (5, 6), (6, -3)])
def test_h_rejects_bad_parameters(args):
    with pytest.raises(GraphError):
        h_construction(*args)


@pytest.mark.parametrize("args", [(8, 3, 3), (8, 4, 2), (8, 4, 0), (8, 9, 3)])
def test_f_rejects_bad_parameters(args):
    with pytest.raises(GraphError):
        f_construction(*args)


def test_fixture_edge_counts():
    assert g1().edge_count == 12
    assert g2().edge_count == 15
    assert g3().edge_count == 19
    assert h1().edge_count == 17
    assert h2().edge_count == 17


def test_fixtures_are_prism_free():
    for g in (g1(), g2(), g3(), h1(), h2()):
        assert prism_free(g)


def test_fixture_attachments():
    g = h1()
    assert sorted(g.neighbors(6)) == list(TYPE_1)
    assert sorted(g.neighbors(7)) == list(TYPE_4)
    assert not g.has_edge(6, 7)


@pytest.mark.parametrize("n", [8, 9, 12])
def test_h3_h4_counts(n):
    assert h3(n).edge_count == 18 + 3 * (n - 8)
    assert h4(n).edge_count == 12 + 3 * (n - 6)


def test_f8_duplicate_classes():
    # the star on 4 vertices plus nothing, versus the star on 5 vertices: same graph
    assert canonical_bytes(f_construction(8, 4, 4)) == canonical_bytes(f_construction(8, 5, 5))
    assert canonical_bytes(f_construction(8, 4, 1)) != canonical_bytes(f_construction(8, 5, 2))


def test_p4_extremal_family_shapes():
    assert [g.edge_count for g in p4_extremal_family(7)] == [6, 6, 6]
    assert len(p4_extremal_family(9)) == 1
    for n in range(12):
        fam = p4_extremal_family(n)
        assert len({g.edge_count for g in fam}) <= 1
        assert len({canonical_bytes(g) for g in fam}) == len(fam)
        assert all(g.n == n for g in fam)


def test_path_constructions():
    assert path_cliques(10, 4).edge_count == 3 * 3 + 0
    g = path_join(9, 4, 1)
    assert g.n == 9
    with pytest.raises(GraphError):
        path_join(9, 5, 0)


def test_main_extremal_is_join():
    g = main_extremal(10, 4, 1)
    assert g.edge_count == 4 * 6 + star(4).edge_count
    with pytest.raises(GraphError):
        main_extremal(10, 4, 5)


def test_complete_bipartite():
    assert complete_bipartite(3, 4).edge_count == 12


def test_spec_builder_round_trip():
    spec = ConstructionSpec("F", (8, 5, 2))
    assert spec.label() == "F(8,5,2)"
    assert spec.build() == f_construction(8, 5, 2)
    assert "prism" in CONSTRUCTION_NAMES
    with pytest.raises(GraphError):
        build("nope")
    with pytest.raises(GraphError):
        build("prism", 1, 2)


def test_constructions_prism_free_where_expected():
    for n in range(6, 12):
        for i in range(0, n + 1, 3):
            assert prism_free(h_construction(n, i))
    assert not is_free(join(complete_bipartite(1, 0), prism(1)), prism(1))

