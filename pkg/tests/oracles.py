"""Independent reference implementations used only by the tests.

Everything here goes through networkx or plain enumeration over labelled graphs,
so it shares no code with the package's canonical labelling, containment or search.
"""

from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from prism_turan.graph import Graph, make_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return make_graph(len(idx), [(idx[u], idx[v]) for u, v in h.edges()])


def nx_contains(host: Graph, pattern: Graph) -> bool:
    if pattern.n > host.n or pattern.edge_count > host.edge_count:
        return False
    gm = GraphMatcher(to_nx(host), to_nx(pattern))
    return any(True for _ in gm.subgraph_monomorphisms_iter())


def nx_contains_at(host: Graph, pattern: Graph, anchor: int) -> bool:
    gm = GraphMatcher(to_nx(host), to_nx(pattern))
    return any(anchor in m for m in gm.subgraph_monomorphisms_iter())


def permutation_contains(host: Graph, pattern: Graph) -> bool:
    """Try every injective map; only for very small inputs."""
    pe = pattern.edges()
    for image in permutations(range(host.n), pattern.n):
        if all(host.has_edge(image[u], image[v]) for u, v in pe):
            return True
    return False


def atlas_graphs(max_n: int) -> list[Graph]:
    """One graph per isomorphism class on 0..max_n vertices (max_n <= 7)."""
    return [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() <= max_n]


def iso_classes(graphs: list[Graph]) -> list[Graph]:
    reps: list[tuple[nx.Graph, Graph]] = []
    for g in graphs:
        h = to_nx(g)
        if not any(nx.is_isomorphic(h, r) for r, _ in reps):
            reps.append((h, g))
    return [g for _, g in reps]


def same_classes(a: list[Graph], b: list[Graph]) -> bool:
    if len(a) != len(b):
        return False
    left = [to_nx(g) for g in a]
    right = [to_nx(g) for g in b]
    return all(sum(nx.is_isomorphic(x, y) for y in right) == 1 for x in left)


def brute_turan(n: int, pattern: Graph) -> tuple[int, list[Graph]]:
    """Max edges and extremal classes over all labelled graphs on n vertices.

    Edge levels are scanned from the top, so only the levels at or above the
    answer are enumerated.
    """
    pairs = list(combinations(range(n), 2))
    for m in range(len(pairs), -1, -1):
        free = [g for es in combinations(pairs, m)
                if not nx_contains(g := make_graph(n, es), pattern)]
        if free:
            return m, iso_classes(free)
    raise AssertionError("unreachable: the empty graph is always free")
