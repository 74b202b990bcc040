"""Exact Turan numbers by exhaustive generation of forbidden-free graphs.

Graphs are grown one vertex at a time (canonical augmentation). A child ``G`` of
parent ``P = G - v`` is accepted only when ``G - c`` is isomorphic to ``P``, where
``c`` is the minimum-degree vertex of ``G`` with the largest canonical label. Every
isomorphism class is then reached from exactly one parent class, and duplicate
children of one parent are removed by canonical form.

Because the deleted vertex always has minimum degree, a graph on m vertices with
``e`` edges has a parent with at least ``e - floor(2e/m)`` edges. That gives a
per-level edge threshold which, together with the optimistic bound
``e + C(n,2) - C(m,2)``, prunes every subtree that cannot reach the target.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from .canon import canonical_bytes, canonical_form
from .graph import Graph, decode_graph6, empty_graph, iter_bits
from .containment import Pattern, as_pattern, is_free

log = logging.getLogger(__name__)

FEASIBILITY_LIMIT = 10


class FeasibilityError(ValueError):
    """Order above the guard without an explicit override."""


class BudgetExceeded(Exception):
    pass


@dataclass
class SearchConfig:
    n: int
    forbidden: list[Pattern]
    mode: str = "max"  # "max" | "enumerate"
    seed_lower_bound: int | None = None
    node_budget: int | None = None
    parallelism: int = 1
    allow_large: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.mode not in ("max", "enumerate"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        self.forbidden = [as_pattern(p) for p in self.forbidden]


@dataclass
class SearchResult:
    n: int
    forbidden: tuple[str, ...]
    mode: str
    max_edges: int | None
    extremal: tuple[str, ...]  # canonical graph6, sorted
    exhaustive: bool
    seed: int | None = None
    nodes_explored: int = 0
    pruned_by_bound: int = 0
    wall_time: float = 0.0

    def extremal_graphs(self) -> list[Graph]:
        return [decode_graph6(s) for s in self.extremal]

    def certificate(self) -> dict:
        """Schedule-independent record (no timings or node counts)."""
        return {
            "n": self.n,
            "forbidden": list(self.forbidden),
            "mode": self.mode,
            "max_edges": self.max_edges,
            "extremal": list(self.extremal),
            "exhaustive": self.exhaustive,
            "seed_lower_bound": self.seed,
        }

    def stats(self) -> dict:
        return {
            "nodes_explored": self.nodes_explored,
            "pruned_by_bound": self.pruned_by_bound,
            "wall_time": round(self.wall_time, 6),
        }


# ---------------------------------------------------------------- bounds


class _LocalBound:
    def __init__(self, value: int):
        self.value = value

    def get(self) -> int:
        return self.value

    def raise_to(self, v: int) -> None:
        if v > self.value:
            self.value = v


class _SharedBound:
    """Monotone threshold shared between worker processes; stale reads only weaken pruning."""

    def __init__(self, cell):
        self.cell = cell

    def get(self) -> int:
        return self.cell.value

    def raise_to(self, v: int) -> None:
        if v > self.cell.value:
            with self.cell.get_lock():
                if v > self.cell.value:
                    self.cell.value = v


@lru_cache(maxsize=4096)
def level_thresholds(n: int, target: int) -> tuple[int, ...]:
    """Least edge count a level-m ancestor of an n-vertex graph with >= target edges can have."""
    need = [0] * (n + 1)
    if n == 0:
        return (max(target, 0),)
    need[n] = target
    for m in range(n, 1, -1):
        need[m - 1] = max(0, need[m] - (2 * need[m]) // m)
    top = comb(n, 2)
    return tuple(max(need[m], target - (top - comb(m, 2)), 0) for m in range(n + 1))


@lru_cache(maxsize=None)
def _masks_by_size(m: int) -> tuple[tuple[int, ...], ...]:
    out: list[list[int]] = [[] for _ in range(m + 1)]
    for mask in range(1 << m):
        out[mask.bit_count()].append(mask)
    return tuple(tuple(x) for x in out)


# ---------------------------------------------------------------- engine


class _Engine:
    def __init__(self, n: int, patterns: Sequence[Pattern], mode: str, bound, budget: int | None,
                 visitor: Callable[[Graph], None] | None = None, counter=None):
        self.n = n
        self.patterns = list(patterns)
        self.mode = mode  # "max" | "enumerate" | "all"
        self.bound = bound
        self.budget = budget
        self.visitor = visitor
        self.counter = counter
        self.nodes = 0
        self.pruned = 0
        self.best = -1
        self.found: dict[bytes, int] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is None:
            return
        if self.counter is not None:
            with self.counter.get_lock():
                self.counter.value += 1
                total = self.counter.value
        else:
            total = self.nodes
        if total > self.budget:
            raise BudgetExceeded

    def _free(self, g: Graph, anchor: int) -> bool:
        return all(is_free(g, p, anchor) for p in self.patterns)

    def _leaf(self, g: Graph, cb: bytes, e: int) -> None:
        if self.mode == "all":
            self.found[cb] = e
            if self.visitor is not None:
                self.visitor(g)
            return
        if e < self.bound.get():
            return
        if e > self.best:
            self.best = e
            if self.mode == "max":
                self.found = {}
        self.found[cb] = e
        self.bound.raise_to(e + 1 if self.mode == "max" else e)

    def root(self) -> tuple[Graph, bytes, int] | None:
        if self.n == 0:
            g = empty_graph(0)
            self._leaf(g, canonical_bytes(g), 0)
            return None
        g = empty_graph(1)
        return g, canonical_bytes(g), 0

    def children(self, g: Graph, cb: bytes, e: int) -> list[tuple[Graph, bytes, int]]:
        m = g.n
        target = 0 if self.mode == "all" else self.bound.get()
        need = level_thresholds(self.n, target)[m + 1]
        deg = g.degrees
        low_s = max(0, need - e)
        masks = _masks_by_size(m)
        out = []
        verdicts: dict[bytes, bool] = {}
        for s in range(m + 1):
            if s < low_s:
                self.pruned += len(masks[s])
                continue
            # the new vertex must have minimum degree in the child
            if any(d < s - 1 for d in deg):
                break
            required = 0
            for u, d in enumerate(deg):
                if d == s - 1:
                    required |= 1 << u
            for mask in masks[s]:
                if mask & required != required:
                    continue
                child = g.add_vertex_mask(mask)
                if not self._free(child, m):
                    continue
                cf = canonical_form(child)
                ccb = cf.canonical_bytes
                ok = verdicts.get(ccb)
                if ok is None:
                    ok = self._is_canonical_child(child, cf.relabeling, s, cb)
                    verdicts[ccb] = ok
                    if ok:
                        out.append((child, ccb, e + s))
        return out

    @staticmethod
    def _is_canonical_child(child: Graph, relabeling: tuple[int, ...], s: int, parent_cb: bytes) -> bool:
        new = child.n - 1
        c = max((v for v in range(child.n) if child.degrees[v] == s), key=lambda v: relabeling[v])
        if c == new:
            return True
        return canonical_bytes(child.delete_vertex(c)) == parent_cb

    def expand(self, g: Graph, cb: bytes, e: int) -> None:
        self._tick()
        if g.n == self.n:
            self._leaf(g, cb, e)
            return
        for child, ccb, ce in self.children(g, cb, e):
            if child.n == self.n:
                self._tick()
                self._leaf(child, ccb, ce)
            else:
                self.expand(child, ccb, ce)

    def frontier(self, depth: int) -> list[tuple[Graph, bytes, int]]:
        """All accepted nodes on ``depth`` vertices (leaves above it are recorded)."""
        start = self.root()
        if start is None:
            return []
        level = [start]
        while level and level[0][0].n < depth:
            nxt = []
            for node in level:
                self._tick()
                for child in self.children(*node):
                    if child[0].n == self.n:
                        self._tick()
                        self._leaf(*child)
                    else:
                        nxt.append(child)
            level = nxt
        return level


# ---------------------------------------------------------------- parallel workers

_W: dict = {}


def _init_worker(n, patterns, mode, cell, counter, budget):
    _W["engine_args"] = (n, patterns, mode, _SharedBound(cell), budget)
    _W["counter"] = counter


def _run_subtree(node: tuple[int, tuple[int, ...], bytes, int]):
    n_vertices, adj, cb, e = node
    n, patterns, mode, bound, budget = _W["engine_args"]
    eng = _Engine(n, patterns, mode, bound, budget, counter=_W["counter"])
    complete = True
    try:
        eng.expand(Graph(n_vertices, adj), cb, e)
    except BudgetExceeded:
        complete = False
    return eng.found, eng.nodes, eng.pruned, complete


def default_workers() -> int:
    env = os.environ.get("PRISM_TURAN_THREADS")
    if env:
        return max(1, int(env))
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


# ---------------------------------------------------------------- public API


def auto_seed(n: int, patterns: Sequence[Pattern]) -> int:
    """Edge count of the best forbidden-free graph among known constructions."""
    from .constructions import build, turan_graph
    from .formulas import c3prism_family, main_theorem_value, path_turan
    from .graph import chromatic_number

    candidates: list[Graph] = []
    chis = [chromatic_number(p.graph) for p in patterns if p.n]
    if chis:
        candidates.append(turan_graph(n, max(1, min(chis) - 1)))
    specs = list(c3prism_family(n)) + list(main_theorem_value(n).family)
    for p in patterns:
        g = p.graph
        if g.n >= 2 and g.edge_count == g.n - 1 and max(g.degrees) <= 2:
            specs += list(path_turan(n, g.n).family)
    for spec in specs:
        try:
            candidates.append(spec.build())
        except (ValueError, IndexError):
            continue
    best = 0
    for g in candidates:
        if g.n == n and g.edge_count > best and all(is_free(g, p) for p in patterns):
            best = g.edge_count
    return best


def turan_exact(config: SearchConfig) -> SearchResult:
    n = config.n
    if n > FEASIBILITY_LIMIT and not config.allow_large:
        raise FeasibilityError(f"n={n} is above the feasibility guard {FEASIBILITY_LIMIT}; "
                               "pass allow_large=True (CLI: --allow-large)")
    if n > FEASIBILITY_LIMIT:
        log.warning("exhaustive search at n=%d may take a long time", n)
    seed = config.seed_lower_bound
    t0 = time.perf_counter()
    total_nodes = total_pruned = 0
    while True:
        found, nodes, pruned, complete = _run(config, seed or 0)
        total_nodes += nodes
        total_pruned += pruned
        # an unwitnessed numeric seed above the true maximum finds nothing: lower it
        if found or not complete or not seed:
            break
        log.info("no graph reached seed %d; retrying with %d", seed, seed - 1)
        seed -= 1
    if found:
        best = max(found.values())
        extremal = tuple(sorted(cb.decode("ascii") for cb, e in found.items() if e == best))
    else:
        best, extremal = None, ()
    if config.mode == "max":
        extremal = ()
    return SearchResult(
        n=n,
        forbidden=tuple(p.name for p in config.forbidden),
        mode=config.mode,
        max_edges=best,
        extremal=extremal,
        exhaustive=complete,
        seed=config.seed_lower_bound,
        nodes_explored=total_nodes,
        pruned_by_bound=total_pruned,
        wall_time=time.perf_counter() - t0,
    )


def _run(config: SearchConfig, threshold: int):
    n = config.n
    if config.parallelism == 1 or n < 5:
        eng = _Engine(n, config.forbidden, config.mode, _LocalBound(threshold), config.node_budget)
        try:
            start = eng.root()
            if start is not None:
                eng.expand(*start)
            complete = True
        except BudgetExceeded:
            complete = False
        return eng.found, eng.nodes, eng.pruned, complete

    ctx = mp.get_context("fork")
    cell = ctx.Value("q", threshold)
    counter = ctx.Value("q", 0)
    bound = _SharedBound(cell)
    eng = _Engine(n, config.forbidden, config.mode, bound, config.node_budget, counter=counter)
    try:
        depth = 1
        level = eng.frontier(depth)
        while level and len(level) < 8 * config.parallelism and depth < n - 2:
            depth += 1
            level = eng.frontier(depth)
    except BudgetExceeded:
        return eng.found, eng.nodes, eng.pruned, False
    found = dict(eng.found)
    nodes, pruned, complete = eng.nodes, eng.pruned, True
    tasks = [(g.n, g.adj, cb, e) for g, cb, e in level]
    with ProcessPoolExecutor(
        max_workers=config.parallelism,
        mp_context=ctx,
        initializer=_init_worker,
        initargs=(n, config.forbidden, config.mode, cell, counter, config.node_budget),
    ) as pool:
        for sub_found, sub_nodes, sub_pruned, sub_complete in pool.map(_run_subtree, tasks):
            for cb, e in sub_found.items():
                found[cb] = e
            nodes += sub_nodes
            pruned += sub_pruned
            complete = complete and sub_complete
    if config.mode == "max" and found:
        top = max(found.values())
        found = {cb: e for cb, e in found.items() if e == top}
    return found, nodes, pruned, complete


def enumerate_free_graphs(n: int, forbidden: Iterable[Pattern | Graph] = (),
                          visitor: Callable[[Graph], None] | None = None,
                          node_budget: int | None = None) -> int:
    """Visit one representative of every forbidden-free isomorphism class on n vertices."""
    patterns = [as_pattern(p) for p in forbidden]
    eng = _Engine(n, patterns, "all", _LocalBound(0), node_budget, visitor=visitor)
    start = eng.root()
    if start is not None:
        eng.expand(*start)
    elif visitor is not None:
        visitor(empty_graph(0))
    return len(eng.found) if n else 1


# ---------------------------------------------------------------- fixed-body supergraphs


@dataclass
class FixedBodyResult:
    body_edges: int
    max_edges: int
    maximizers: list[tuple[tuple[int, int], ...]]
    extremal: tuple[str, ...]
    subsets_checked: int = 0
    free_subsets: list[tuple[tuple[int, int], ...]] = field(default_factory=list)


def max_supergraph_over_fixed_body(body: Graph, optional_edges: Sequence[tuple[int, int]],
                                   forbidden: Pattern | Graph | Sequence[Pattern | Graph]) -> FixedBodyResult:
    """Best forbidden-free supergraph of ``body`` using a subset of ``optional_edges``."""
    if isinstance(forbidden, (Pattern, Graph)):
        forbidden = [forbidden]
    patterns = [as_pattern(p) for p in forbidden]
    for u, v in optional_edges:
        if body.has_edge(u, v):
            raise ValueError(f"optional pair ({u}, {v}) is already a body edge")
    pairs = [tuple(sorted(p)) for p in optional_edges]
    best = -1
    maximizers: list = []
    free_subsets: list = []
    checked = 0
    for r in range(len(pairs) + 1):
        for subset in combinations(pairs, r):
            checked += 1
            g = body.add_edges(subset)
            if not all(is_free(g, p) for p in patterns):
                continue
            free_subsets.append(subset)
            if g.edge_count > best:
                best, maximizers = g.edge_count, [subset]
            elif g.edge_count == best:
                maximizers.append(subset)
    extremal = tuple(sorted({canonical_bytes(body.add_edges(s)).decode("ascii") for s in maximizers}))
    return FixedBodyResult(body.edge_count, best, maximizers, extremal, checked, free_subsets)
