import json
import os

import pytest
from hypothesis import given, settings, strategies as st

from oracles import atlas_graphs, brute_turan, nx_contains, same_classes
from prism_turan.canon import canonical_bytes
from prism_turan.constructions import (
    P62,
    P62_NON_EDGES,
    complete,
    cycle,
    g1,
    h1,
    h2,
    p4_extremal_family,
    h_construction,
    path,
    path_power,
    prism,
    star,
)
from prism_turan.containment import Pattern, contains
from prism_turan.graph import disjoint_union, make_graph
from prism_turan.search import (
    FeasibilityError,
    SearchConfig,
    auto_seed,
    default_workers,
    enumerate_free_graphs,
    level_thresholds,
    max_supergraph_over_fixed_body,
    turan_exact,
)

ORACLE_PATTERNS = {"P4": path(4), "C3": complete(3), "P6^2": path_power(6, 2), "prism1": prism(1)}


def run(n, pattern, mode="enumerate", seed=None, workers=1, budget=None):
    pat = Pattern.from_graph(pattern) if not isinstance(pattern, Pattern) else pattern
    return turan_exact(SearchConfig(n, [pat], mode=mode, seed_lower_bound=seed,
                                    parallelism=workers, node_budget=budget))


def canon_set(graphs):
    return sorted(canonical_bytes(g).decode() for g in graphs)


# ---------------------------------------------------------------- enumeration


def test_class_counts_match_atlas():
    atlas = atlas_graphs(7)
    for n in range(8):
        assert enumerate_free_graphs(n) == sum(1 for g in atlas if g.n == n)


def test_triangle_free_on_three_vertices():
    assert enumerate_free_graphs(3, [complete(3)]) == 3


@pytest.mark.parametrize("name", ["P4", "C3", "prism1"])
def test_free_class_counts_match_atlas(name):
    pat = ORACLE_PATTERNS[name]
    atlas = atlas_graphs(6)
    for n in range(7):
        expected = sum(1 for g in atlas if g.n == n and not nx_contains(g, pat))
        seen = []
        count = enumerate_free_graphs(n, [pat], visitor=seen.append)
        assert count == expected
        if n:
            assert len(seen) == expected
            assert len(set(canon_set(seen))) == expected


# ---------------------------------------------------------------- oracle equivalence


@pytest.mark.parametrize("name", sorted(ORACLE_PATTERNS))
def test_turan_exact_matches_labelled_brute_force(name):
    pat = ORACLE_PATTERNS[name]
    for n in range(1, 7):
        value, classes = brute_turan(n, pat)
        res = run(n, pat)
        assert res.exhaustive
        assert res.max_edges == value, n
        assert same_classes(res.extremal_graphs(), classes), n


def test_examples():
    res = run(6, prism(1))
    assert res.max_edges == 12
    assert list(res.extremal) == canon_set([g1(), h_construction(6, 3)])
    res = run(5, prism(1))
    assert res.max_edges == 10 and list(res.extremal) == canon_set([complete(5)])
    res = run(4, path(4))
    assert res.max_edges == 3
    assert list(res.extremal) == canon_set([disjoint_union(complete(3), complete(1)), star(4)])


def test_extremal_members_are_free_and_extremal():
    res = run(8, prism(1))
    pat = Pattern.from_graph(prism(1))
    for g in res.extremal_graphs():
        assert g.edge_count == res.max_edges
        assert contains(g, pat) is None


@pytest.mark.parametrize("n", range(1, 9))
def test_p4_family_matches_oracle(n):
    res = run(n, path(4))
    assert list(res.extremal) == canon_set(p4_extremal_family(n))


def test_max_mode_has_no_extremal_list():
    res = run(7, prism(1), mode="max")
    assert res.max_edges == 15 and res.extremal == ()


def test_multiple_patterns():
    pats = [Pattern.from_graph(complete(3)), Pattern.from_graph(cycle(5))]
    res = turan_exact(SearchConfig(6, pats, mode="enumerate"))
    assert res.max_edges == 9  # K_{3,3} is bipartite


# ---------------------------------------------------------------- seeding


@pytest.mark.parametrize("n", range(5, 10))
def test_seeding_is_sound(n):
    pat = Pattern.from_graph(prism(1))
    seed = auto_seed(n, [pat])
    reference = run(n, pat, seed=seed)
    for other in (None, max(seed - 3, 0), seed + 2):
        res = run(n, pat, seed=other)
        assert res.max_edges == reference.max_edges
        assert res.extremal == reference.extremal


@given(st.integers(2, 7), st.sampled_from(sorted(ORACLE_PATTERNS)), st.integers(0, 25))
@settings(max_examples=25)
def test_any_numeric_seed_is_sound(n, name, seed):
    pat = ORACLE_PATTERNS[name]
    a = run(n, pat)
    b = run(n, pat, seed=seed)
    assert (a.max_edges, a.extremal) == (b.max_edges, b.extremal)


def test_auto_seed_is_witnessed():
    pat = Pattern.from_graph(prism(1))
    for n in range(1, 10):
        seed = auto_seed(n, [pat])
        assert seed == run(n, pat, mode="max", seed=seed).max_edges


def test_level_thresholds_are_monotone():
    for n in range(1, 12):
        for target in range(0, n * (n - 1) // 2 + 1):
            th = level_thresholds(n, target)
            assert all(a <= b for a, b in zip(th, th[1:]))


# ---------------------------------------------------------------- determinism and limits


def test_certificates_identical_across_worker_counts():
    pat = Pattern.from_graph(prism(1), "prism:1")
    docs = set()
    for workers in sorted({1, 2, max(4, default_workers())}):
        res = run(9, pat, seed=None, workers=workers)
        docs.add(json.dumps(res.certificate(), sort_keys=True))
    assert len(docs) == 1


def test_parallel_max_mode_matches_serial():
    pat = Pattern.from_graph(path_power(6, 2))
    a = run(9, pat, mode="max", workers=1)
    b = run(9, pat, mode="max", workers=3)
    assert a.certificate() == b.certificate()


def test_budget_marks_non_exhaustive():
    res = run(8, prism(1), budget=3)
    assert not res.exhaustive


def test_feasibility_guard():
    with pytest.raises(FeasibilityError):
        turan_exact(SearchConfig(11, [Pattern.from_graph(prism(1))]))


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(-1, [])
    with pytest.raises(ValueError):
        SearchConfig(3, [], mode="fast")
    with pytest.raises(ValueError):
        SearchConfig(3, [], parallelism=0)


def test_thread_env(monkeypatch):
    monkeypatch.setenv("PRISM_TURAN_THREADS", "3")
    assert default_workers() == 3
    monkeypatch.delenv("PRISM_TURAN_THREADS")
    assert default_workers() >= 1


# ---------------------------------------------------------------- fixed body


def test_fixed_body_p62():
    res = max_supergraph_over_fixed_body(P62, P62_NON_EDGES, prism(1))
    assert res.max_edges == 12
    assert list(res.extremal) == canon_set([g1()])
    assert len(res.maximizers) == 2
    assert res.subsets_checked == 64


@pytest.mark.parametrize("body,core,forced", [
    (h1, 10, [((2, 5),)]),
    (h2, 11, [((0, 3), (2, 5))]),
])
def test_fixed_body_forced_edges(body, core, forced):
    g = body()
    res = max_supergraph_over_fixed_body(g, P62_NON_EDGES, prism(1))
    assert res.max_edges - (g.edge_count - 9) == core
    assert [tuple(sorted(m)) for m in res.maximizers] == forced


def test_fixed_body_rejects_existing_edges():
    with pytest.raises(ValueError):
        max_supergraph_over_fixed_body(P62, [(0, 1)], prism(1))
