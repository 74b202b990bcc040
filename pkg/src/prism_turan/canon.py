"""Canonical labelling by partition refinement plus individualisation search.

The search tree is the usual one: refine the ordered vertex partition to an
equitable one, individualise each vertex of the first non-singleton cell, recurse.
Every discrete leaf yields a relabelling; the canonical one is the leaf whose
relabelled adjacency code is largest. Two leaves with the same code differ by an
automorphism, which is used to skip equivalent branches.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .graph import Graph, encode_graph6_bytes, iter_bits


@dataclass(frozen=True)
class CanonicalForm:
    canonical_bytes: bytes
    relabeling: tuple[int, ...]  # relabeling[v] = canonical label of v

    @property
    def graph6(self) -> str:
        return self.canonical_bytes.decode("ascii")


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = adj[v]
                sig = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                out.extend(groups[s] for s in sorted(groups))
        cells = out
        if not split:
            return cells


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    code = []
    for v in order:
        row = 0
        for u in iter_bits(adj[v]):
            row |= 1 << pos[u]
        code.append(row)
    return tuple(code)


class _Search:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.n = g.n
        self.best_code: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.best_path: list[int] = []
        self.first_code: tuple[int, ...] | None = None
        self.first_order: list[int] | None = None
        self.first_path: list[int] = []
        self.generators: list[tuple[int, ...]] = []

    def run(self, cells: list[list[int]]) -> None:
        self._visit(_refine(self.adj, cells), [])

    def _orbit_rep(self, prefix: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            if all(gen[p] == p for p in prefix):
                for v, w in enumerate(gen):
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def _leaf(self, cells: list[list[int]], path: list[int]) -> int | None:
        order = [c[0] for c in cells]
        code = _leaf_code(self.adj, order)
        if self.first_code is None:
            self.first_code = self.best_code = code
            self.first_order = self.best_order = order
            self.first_path = self.best_path = list(path)
            return None
        for ref_code, ref_order, ref_path in (
            (self.first_code, self.first_order, self.first_path),
            (self.best_code, self.best_order, self.best_path),
        ):
            if code == ref_code:
                gen = [0] * self.n
                for a, b in zip(ref_order, order):
                    gen[a] = b
                self.generators.append(tuple(gen))
                depth = 0
                while depth < len(path) and depth < len(ref_path) and path[depth] == ref_path[depth]:
                    depth += 1
                return depth
        if code > self.best_code:
            self.best_code, self.best_order, self.best_path = code, order, list(path)
        return None

    def _visit(self, cells: list[list[int]], path: list[int]) -> int | None:
        """Returns a depth to jump back to, or None to continue normally."""
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self._leaf(cells, path)
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if tried:
                reps = self._orbit_rep(path)
                if any(reps[v] == reps[w] for w in tried):
                    continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            jump = self._visit(_refine(self.adj, child), path + [v])
            if jump is not None and jump < len(path):
                return jump
        return None


def _search(g: Graph, colouring: list[int] | None = None) -> _Search:
    if colouring is None:
        cells = [list(range(g.n))] if g.n else []
    else:
        buckets: dict[int, list[int]] = {}
        for v, c in enumerate(colouring):
            buckets.setdefault(c, []).append(v)
        cells = [buckets[c] for c in sorted(buckets)]
    s = _Search(g)
    if g.n:
        s.run(cells)
    return s


def canonical_form(g: Graph, colouring: list[int] | None = None) -> CanonicalForm:
    """Canonical relabelling of ``g``; an optional vertex colouring is respected."""
    if g.n == 0:
        return CanonicalForm(encode_graph6_bytes(g), ())
    s = _search(g, colouring)
    relabeling = [0] * g.n
    for i, v in enumerate(s.best_order):
        relabeling[v] = i
    canon = g.relabel(relabeling)
    data = encode_graph6_bytes(canon)
    if colouring is not None:
        colours = [0] * g.n
        for v, c in enumerate(colouring):
            colours[relabeling[v]] = c
        data += b"|" + ",".join(map(str, colours)).encode()
    return CanonicalForm(data, tuple(relabeling))


@lru_cache(maxsize=200_000)
def _canon_bytes_cached(n: int, adj: tuple[int, ...]) -> bytes:
    return canonical_form(Graph(n, adj)).canonical_bytes


def canonical_bytes(g: Graph) -> bytes:
    return _canon_bytes_cached(g.n, g.adj)


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_form(g).relabeling)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_bytes(g) == canonical_bytes(h)


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    return list(_search(g).generators) if g.n else []


def orbits(g: Graph) -> list[int]:
    """Orbit representative (least vertex) for each vertex under the found generators."""
    if g.n == 0:
        return []
    return _search(g)._orbit_rep([])


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """Every automorphism, by pruned backtracking. Exponential; small graphs only."""
    n = g.n
    deg = g.degrees
    found: list[tuple[int, ...]] = []
    image = [-1] * n

    def extend(v: int, used: int) -> None:
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used >> w & 1 or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if (g.adj[v] >> u & 1) != (g.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                extend(v + 1, used | 1 << w)
        image[v] = -1

    extend(0, 0)
    return found


def brute_force_canonical_code(g: Graph) -> tuple[int, ...]:
    """Largest relabelled adjacency code over all n! orders (test oracle)."""
    return max((_leaf_code(g.adj, list(p)) for p in permutations(range(g.n))), default=())
