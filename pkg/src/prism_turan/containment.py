"""Non-induced subgraph containment.

A pattern vertex ordering is fixed once per pattern (and per anchored start vertex);
the host side is searched by backtracking over candidate bitmasks. Host vertices that
are twins (equal open or closed neighbourhoods) are interchangeable, so only the
first unused member of each twin class is ever tried for a pattern vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .canon import canonical_bytes
from .constructions import path, prism
from .graph import Graph, iter_bits

Embedding = tuple[int, ...]  # embedding[u] = host image of pattern vertex u

_PRISM1 = canonical_bytes(prism(1))
_P4 = canonical_bytes(path(4))


def _search_order(g: Graph, start: int | None = None) -> tuple[int, ...]:
    """Greedy order: each next vertex has the most already-placed neighbours."""
    remaining = set(range(g.n))
    order: list[int] = []
    placed = 0
    while remaining:
        if start is not None and not order:
            v = start
        else:
            v = max(
                remaining,
                key=lambda u: ((g.adj[u] & placed).bit_count(), g.degrees[u], -u),
            )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return tuple(order)


@dataclass(frozen=True)
class Pattern:
    graph: Graph
    search_order: tuple[int, ...]
    degrees: tuple[int, ...]
    name: str = ""
    kind: str = "generic"  # "prism1" and "p4" select dedicated fast paths
    _anchored: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_graph(cls, g: Graph, name: str = "") -> Pattern:
        cb = canonical_bytes(g)
        kind = "prism1" if cb == _PRISM1 else "p4" if cb == _P4 else "generic"
        return cls(g, _search_order(g), g.degrees, name or g.to_graph6(), kind)

    def order_from(self, u: int) -> tuple[int, ...]:
        if u not in self._anchored:
            self._anchored[u] = _search_order(self.graph, u)
        return self._anchored[u]

    @property
    def n(self) -> int:
        return self.graph.n


def as_pattern(p: Pattern | Graph) -> Pattern:
    return p if isinstance(p, Pattern) else Pattern.from_graph(p)


@lru_cache(maxsize=50_000)
def _twin_classes(n: int, adj: tuple[int, ...]) -> tuple[int, ...]:
    """For each vertex, a mask of the lower-labelled vertices that are its twins."""
    lower = [0] * n
    for u in range(n):
        for v in range(u):
            open_u = adj[u] & ~(1 << v)
            open_v = adj[v] & ~(1 << u)
            if open_u == open_v:
                lower[u] |= 1 << v
    return tuple(lower)


def _backtrack(host: Graph, pat: Graph, order: tuple[int, ...], first_choices: int | None) -> Embedding | None:
    k = len(order)
    if k > host.n:
        return None
    hadj = host.adj
    hdeg = host.degrees
    pos = {u: i for i, u in enumerate(order)}
    # earlier[i]: positions of already-placed pattern neighbours of order[i]
    earlier = [[pos[w] for w in iter_bits(pat.adj[u]) if pos[w] < i] for i, u in enumerate(order)]
    need = [pat.degrees[u] for u in order]
    twins = _twin_classes(host.n, hadj)
    all_mask = (1 << host.n) - 1
    deg_ok = [0] * (max(need, default=0) + 1)
    for d in range(len(deg_ok)):
        m = 0
        for v in range(host.n):
            if hdeg[v] >= d:
                m |= 1 << v
        deg_ok[d] = m
    image = [0] * k

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        cand = deg_ok[need[i]] & ~used
        if i == 0 and first_choices is not None:
            cand &= first_choices
        for j in earlier[i]:
            cand &= hadj[image[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            # an unused lower twin would give an equivalent branch
            if twins[v] & ~used and not (i == 0 and first_choices is not None):
                continue
            image[i] = v
            if place(i + 1, used | low):
                return True
        return False

    if not place(0, 0):
        return None
    emb = [0] * k
    for i, u in enumerate(order):
        emb[u] = image[i]
    return tuple(emb)


def contains(host: Graph, pattern: Pattern | Graph, anchor: int | None = None) -> Embedding | None:
    """An edge-preserving injection of ``pattern`` into ``host``, or None.

    With ``anchor`` set, only embeddings whose image contains that host vertex are
    sought (sufficient when ``host - anchor`` is already known to be free).
    """
    pattern = as_pattern(pattern)
    if pattern.n > host.n or pattern.graph.edge_count > host.edge_count:
        return None
    if pattern.kind == "prism1":
        return _prism1_embedding(host, anchor)
    if anchor is None:
        return _backtrack(host, pattern.graph, pattern.search_order, None)
    for u in range(pattern.n):
        if pattern.degrees[u] > host.degrees[anchor]:
            continue
        emb = _backtrack(host, pattern.graph, pattern.order_from(u), 1 << anchor)
        if emb is not None:
            return emb
    return None


def is_free(host: Graph, pattern: Pattern | Graph, anchor: int | None = None) -> bool:
    pattern = as_pattern(pattern)
    if pattern.kind == "p4":
        return is_p4_free(host)
    return contains(host, pattern, anchor) is None


# ---------------------------------------------------------------- P_4


def is_p4_free(g: Graph) -> bool:
    """Each component must be a triangle or a star (K_1 and K_2 included)."""
    seen = 0
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        size = comp.bit_count()
        if size <= 2:
            continue
        edges = sum(g.adj[v].bit_count() for v in iter_bits(comp)) // 2
        if size == 3 and edges == 3:
            continue
        if edges == size - 1 and any(g.adj[v].bit_count() == size - 1 for v in iter_bits(comp)):
            continue
        return False
    return True


# ---------------------------------------------------------------- triangular prism


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for a in range(g.n):
        higher = g.adj[a] >> (a + 1) << (a + 1)
        for b in iter_bits(higher):
            for c in iter_bits(higher & g.adj[b] & ~((1 << (b + 1)) - 1)):
                out.append((a, b, c))
    return out


_PERMS3 = tuple(permutations(range(3)))


def _matched(g: Graph, t1: tuple[int, int, int], t2: tuple[int, int, int]) -> tuple[int, int, int] | None:
    adj = g.adj
    for p in _PERMS3:
        if adj[t1[0]] >> t2[p[0]] & 1 and adj[t1[1]] >> t2[p[1]] & 1 and adj[t1[2]] >> t2[p[2]] & 1:
            return (t2[p[0]], t2[p[1]], t2[p[2]])
    return None


# prism(1) labels: vertex 2a + b is cycle vertex a on layer b
def _prism1_embedding(g: Graph, anchor: int | None = None) -> Embedding | None:
    tris = triangles(g)
    if len(tris) < 2:
        return None
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in tris]
    for i, j in combinations(range(len(tris)), 2):
        if masks[i] & masks[j]:
            continue
        if anchor is not None and not (masks[i] | masks[j]) >> anchor & 1:
            continue
        partner = _matched(g, tris[i], tris[j])
        if partner is not None:
            emb = [0] * 6
            for a in range(3):
                emb[2 * a] = tris[i][a]
                emb[2 * a + 1] = partner[a]
            return tuple(emb)
    return None


def prism_free(g: Graph, k: int = 1) -> bool:
    if k == 1:
        return _prism1_embedding(g) is None
    return contains(g, prism(k)) is None


def is_embedding(host: Graph, pattern: Graph, emb: Embedding) -> bool:
    if len(emb) != pattern.n or len(set(emb)) != pattern.n:
        return False
    return all(host.has_edge(emb[u], emb[v]) for u, v in pattern.edges())
