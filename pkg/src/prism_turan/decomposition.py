"""Decomposition families.

``M`` belongs to the family of ``L`` (with ``p = chi(L) - 1``) when ``L`` embeds in
``(M + t isolated vertices)`` joined to a balanced complete (p-1)-partite graph with
``t`` vertices per part, and no proper subgraph of ``M`` does the same.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canon import canonical_bytes
from .constructions import turan_graph
from .containment import Embedding, contains
from .graph import Graph, chromatic_number, disjoint_union, empty_graph, join
from .search import enumerate_free_graphs


@dataclass(frozen=True)
class DecompositionQuery:
    L: Graph
    p: int
    t_max: int
    m_max_vertices: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.t_max < 1:
            raise ValueError("t_max must be >= 1")


@dataclass
class MembershipVerdict:
    member: bool
    contains: bool  # containment at t_max, minimality aside
    witness_t: int | None = None
    embedding: Embedding | None = None
    smaller_witness: str | None = None  # graph6 of a proper subgraph that also embeds


@dataclass
class DecompositionResult:
    query: DecompositionQuery
    members: list[str]  # canonical graph6, sorted
    candidates_checked: int
    containing: list[str] = field(default_factory=list)

    def certificate(self) -> dict:
        return {
            "L": self.query.L.to_graph6(),
            "p": self.query.p,
            "t_max": self.query.t_max,
            "m_max_vertices": self.query.m_max_vertices,
            "candidates_checked": self.candidates_checked,
            "containing": self.containing,
            "family": self.members,
        }


def decomposition_host(M: Graph, p: int, t: int) -> Graph:
    """(M + t isolated vertices) joined to the (p-1)-partite Turan graph on (p-1)t vertices."""
    side = disjoint_union(M, empty_graph(t))
    if p == 1:
        return side
    return join(side, turan_graph((p - 1) * t, p - 1))


def _strip_isolated(g: Graph) -> Graph:
    return g.induced([v for v in range(g.n) if g.adj[v]])


def embeds_at(L: Graph, M: Graph, p: int, t: int) -> Embedding | None:
    return contains(decomposition_host(M, p, t), L)


def _witness_t(L: Graph, M: Graph, p: int, t_max: int) -> tuple[int, Embedding] | None:
    # containment is monotone in t, so test t_max first and then find the least t
    if embeds_at(L, M, p, t_max) is None:
        return None
    lo, hi = 1, t_max
    while lo < hi:
        mid = (lo + hi) // 2
        if embeds_at(L, M, p, mid) is not None:
            hi = mid
        else:
            lo = mid + 1
    return lo, embeds_at(L, M, p, lo)


def is_decomposition_member(L: Graph, M: Graph, p: int | None = None,
                            t_max: int | None = None) -> MembershipVerdict:
    chi = chromatic_number(L)
    if p is None:
        p = chi - 1
    elif p != chi - 1:
        raise ValueError(f"p must equal chi(L) - 1 = {chi - 1}, got {p}")
    if t_max is None:
        t_max = L.n
    hit = _witness_t(L, M, p, t_max)
    if hit is None:
        return MembershipVerdict(False, False)
    t, emb = hit
    for u, v in M.edges():
        smaller = _strip_isolated(M.remove_edges([(u, v)]))
        if embeds_at(L, smaller, p, t_max) is not None:
            return MembershipVerdict(False, True, t, emb, smaller.to_graph6())
    return MembershipVerdict(True, True, t, emb)


def decomposition_family(L: Graph, m_max_vertices: int, t_max: int | None = None) -> DecompositionResult:
    """Minimal members with at most ``m_max_vertices`` vertices, up to isomorphism."""
    if m_max_vertices < 1:
        raise ValueError("m_max_vertices must be >= 1")
    chi = chromatic_number(L)
    if chi < 3:
        raise ValueError("decomposition families are only computed for non-bipartite L")
    p = chi - 1
    if t_max is None:
        t_max = L.n
    query = DecompositionQuery(L, p, t_max, m_max_vertices)

    candidates: list[Graph] = []
    for m in range(2, m_max_vertices + 1):
        enumerate_free_graphs(m, visitor=lambda g: candidates.append(g) if min(g.degrees) > 0 else None)
    candidates.sort(key=lambda g: (g.n, g.edge_count, canonical_bytes(g)))

    containing = [M for M in candidates if embeds_at(L, M, p, t_max) is not None]
    keys = {canonical_bytes(M) for M in containing}
    members = []
    for M in containing:
        minimal = True
        for u, v in M.edges():
            smaller = _strip_isolated(M.remove_edges([(u, v)]))
            if smaller.n == 0:
                continue
            if canonical_bytes(smaller) in keys or embeds_at(L, smaller, p, t_max) is not None:
                minimal = False
                break
        if minimal:
            members.append(canonical_bytes(M).decode("ascii"))
    return DecompositionResult(
        query,
        sorted(members),
        len(candidates),
        sorted(canonical_bytes(M).decode("ascii") for M in containing),
    )
