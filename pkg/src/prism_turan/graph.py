"""Compact undirected simple graphs with bitmask adjacency rows.

Vertex ``v`` of a :class:`Graph` owns the integer ``adj[v]`` whose bit ``u`` is set
iff ``uv`` is an edge. Python integers are unbounded, so the same representation
serves every order up to :data:`MAX_VERTICES`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

# Largest order expressible in the 4-byte graph6 size header.
MAX_VERTICES = 258047


class GraphError(ValueError):
    """Invalid vertex, loop, or malformed encoding."""


class CapacityError(GraphError):
    """Result would exceed :data:`MAX_VERTICES` or an exact-algorithm size cap."""


def _check_order(n: int) -> None:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds capacity {MAX_VERTICES}")


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency rows do not match vertex count")

    @cached_property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def e(self) -> int:
        return self.edge_count

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.adj[u] >> v & 1]

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        return make_graph(self.n, list(self.edges()) + list(pairs))

    def remove_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in pairs:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def add_vertex(self, neighbors: Iterable[int]) -> Graph:
        """Append vertex ``n`` adjacent to ``neighbors``."""
        mask = 0
        for u in neighbors:
            if not 0 <= u < self.n:
                raise GraphError(f"vertex {u} out of range")
            mask |= 1 << u
        return self.add_vertex_mask(mask)

    def add_vertex_mask(self, mask: int) -> Graph:
        n = self.n
        bit = 1 << n
        adj = tuple(row | bit if mask >> i & 1 else row for i, row in enumerate(self.adj))
        return Graph(n + 1, adj + (mask,))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled in the order given."""
        pos = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for u in iter_bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
        return Graph(len(vertices), tuple(adj))

    def delete_vertex(self, v: int) -> Graph:
        return self.induced([u for u in range(self.n) if u != v])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in iter_bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, tuple(adj))

    def to_graph6(self) -> str:
        return encode_graph6(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count}, g6={encode_graph6(self)!r})"


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    _check_order(n)
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    _check_order(n)
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    _check_order(n)
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    _check_order(g1.n + g2.n)
    shift = g1.n
    return Graph(g1.n + g2.n, g1.adj + tuple(row << shift for row in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex sets."""
    _check_order(g1.n + g2.n)
    n1, n2 = g1.n, g2.n
    side1 = (1 << n1) - 1
    side2 = ((1 << n2) - 1) << n1
    adj = tuple(row | side2 for row in g1.adj) + tuple((row << n1) | side1 for row in g2.adj)
    return Graph(n1 + n2, adj)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj)))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(a, b)`` is labelled ``a * h.n + b``."""
    _check_order(g.n * h.n)
    m = h.n
    edges = []
    for a in range(g.n):
        for b1, b2 in h.edges():
            edges.append((a * m + b1, a * m + b2))
    for a1, a2 in g.edges():
        for b in range(m):
            edges.append((a1 * m + b, a2 * m + b))
    return make_graph(g.n * m, edges)


# ---------------------------------------------------------------- graph6


def _size_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= MAX_VERTICES:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise CapacityError(f"{n} vertices exceeds graph6 capacity handled here")


def encode_graph6_bytes(g: Graph) -> bytes:
    out = bytearray(_size_header(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def encode_graph6(g: Graph) -> str:
    return encode_graph6_bytes(g).decode("ascii")


def decode_graph6(data: str | bytes) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise GraphError("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 byte outside 63..126")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise GraphError("unsupported graph6 size header")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    _check_order(n)
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# ---------------------------------------------------------------- exact invariants

EXACT_STATS_CAP = 32


def min_degree(g: Graph) -> int:
    return min(g.degrees, default=0)


def independence_number(g: Graph) -> int:
    if g.n > EXACT_STATS_CAP:
        raise CapacityError(f"exact independence number limited to {EXACT_STATS_CAP} vertices")
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & ~g.adj[v] & ~(1 << v), size + 1)
        grow(cand & ~(1 << v), size)

    grow((1 << g.n) - 1, 0)
    return best


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking colour assignment."""
    if g.n > EXACT_STATS_CAP:
        raise CapacityError(f"exact chromatic number limited to {EXACT_STATS_CAP} vertices")
    if g.n == 0:
        return 0
    if g.edge_count == 0:
        return 1
    order = sorted(range(g.n), key=lambda v: -g.degrees[v])

    def colourable(k: int) -> bool:
        classes = [0] * k
        colour = [-1] * g.n

        def place(i: int, used: int) -> bool:
            if i == g.n:
                return True
            v = order[i]
            # a fresh colour is only tried once (colour symmetry)
            for c in range(min(used + 1, k)):
                if classes[c] & g.adj[v]:
                    continue
                classes[c] |= 1 << v
                colour[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
            return False

        return place(0, 0)

    k = 2
    while not colourable(k):
        k += 1
    return k


def basic_stats(g: Graph) -> dict:
    return {
        "degrees": list(g.degrees),
        "min_degree": min_degree(g),
        "independence_number": independence_number(g),
        "chromatic_number": chromatic_number(g),
    }
