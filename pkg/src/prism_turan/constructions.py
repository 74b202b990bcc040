"""Named graphs and parameterised constructions.

Fixture labelling: the six path-power vertices v_1..v_6 are vertices 0..5, so the
edge v_1v_4 is ``(V1, V4) == (0, 3)``. Attached vertices (x, y, then any extra
vertices) follow from 6 upwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    complete_graph,
    cartesian_product,
    disjoint_union,
    empty_graph,
    join,
    make_graph,
)

V1, V2, V3, V4, V5, V6 = range(6)

# attachment sets for a vertex with four neighbours on P_6^2
TYPE_1 = (V1, V2, V3, V4)
TYPE_2 = (V2, V3, V4, V5)
TYPE_3 = (V1, V3, V4, V6)
TYPE_4 = (V1, V3, V5, V6)

# the six pairs of K_6 missing from P_6^2
P62_NON_EDGES = ((V1, V4), (V1, V5), (V1, V6), (V2, V5), (V2, V6), (V3, V6))


def complete(n: int) -> Graph:
    return complete_graph(n)


def empty(n: int) -> Graph:
    return empty_graph(n)


def complete_bipartite(s: int, t: int) -> Graph:
    return join(empty_graph(s), empty_graph(t))


def path(k: int) -> Graph:
    return make_graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return make_graph(k, [(i, (i + 1) % k) for i in range(k)])


def star(j: int) -> Graph:
    """Star on ``j`` vertices: centre 0 joined to 1..j-1 (j=1 is a lone vertex)."""
    if j < 1:
        raise GraphError("a star needs at least one vertex")
    return make_graph(j, [(0, i) for i in range(1, j)])


def disjoint_copies(g: Graph, t: int) -> Graph:
    out = empty_graph(0)
    for _ in range(t):
        out = disjoint_union(out, g)
    return out


def turan_graph(n: int, r: int) -> Graph:
    """Balanced complete r-partite graph; parts are consecutive label blocks."""
    if r < 1:
        raise GraphError("Turan graph needs r >= 1")
    if n < 0:
        raise GraphError("negative order")
    sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
    part = []
    for i, s in enumerate(sizes):
        part += [i] * s
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


def path_power(k: int, p: int) -> Graph:
    """v_1..v_k (labels 0..k-1) with v_iv_j an edge iff |i-j| <= p."""
    if k < 1 or p < 1:
        raise GraphError("path_power needs k >= 1 and p >= 1")
    return make_graph(k, [(i, j) for i in range(k) for j in range(i + 1, min(k, i + p + 1))])


def prism(k: int) -> Graph:
    """C_{2k+1} x P_2; vertex ``2a + b`` is cycle vertex ``a`` on layer ``b``."""
    if k < 1:
        raise GraphError("prism needs k >= 1")
    return cartesian_product(cycle(2 * k + 1), path(2))


def _bipartite_with_side(inner: Graph, n: int) -> Graph:
    """``inner`` placed on labels 0..i-1 and joined to an independent set of n-i vertices."""
    return join(inner, empty_graph(n - inner.n))


def h_construction(n: int, i: int) -> Graph:
    """K_{i,n-i} with i/3 disjoint triangles inside the i-side."""
    if i < 0 or i > n:
        raise GraphError(f"H needs 0 <= i <= n, got i={i}, n={n}")
    if i % 3:
        raise GraphError(f"H needs 3 | i, got i={i}")
    return _bipartite_with_side(disjoint_copies(complete_graph(3), i // 3), n)


def f_construction(n: int, i: int, j: int) -> Graph:
    """K_{i,n-i} with a j-vertex star and (i-j)/3 triangles inside the i-side."""
    if i > n or i < 1:
        raise GraphError(f"F needs 1 <= i <= n, got i={i}, n={n}")
    if i % 3 == 0:
        raise GraphError(f"F needs 3 not dividing i, got i={i}")
    if not 1 <= j <= i or (i - j) % 3:
        raise GraphError(f"F needs 1 <= j <= i and 3 | (i - j), got i={i}, j={j}")
    inner = disjoint_union(star(j), disjoint_copies(complete_graph(3), (i - j) // 3))
    return _bipartite_with_side(inner, n)


def f_star_sizes(i: int) -> list[int]:
    return [j for j in range(1, i + 1) if (i - j) % 3 == 0]


# ---------------------------------------------------------------- fixtures

P62 = path_power(6, 2)


def g1() -> Graph:
    """K_6 minus the three pairs v_1v_4, v_1v_5, v_1v_6."""
    return complete_graph(6).remove_edges([(V1, V4), (V1, V5), (V1, V6)])


def g2() -> Graph:
    return P62.add_vertex(TYPE_1).add_edges([(V1, V4), (V3, V6)])


def h1() -> Graph:
    return P62.add_vertex(TYPE_1).add_vertex(TYPE_4)


def h2() -> Graph:
    return P62.add_vertex(TYPE_1).add_vertex((V3, V4, V5, V6))


def g3() -> Graph:
    return h2().add_edges([(V1, V4), (V3, V6)])


def h3(n: int) -> Graph:
    """H_1 + v_3v_6 with n-8 extra independent vertices each joined to v_3, v_5, v_6."""
    if n < 8:
        raise GraphError("H3 needs n >= 8")
    g = h1().add_edges([(V3, V6)])
    for _ in range(n - 8):
        g = g.add_vertex((V3, V5, V6))
    return g


def h4(n: int) -> Graph:
    """G_1 with n-6 extra independent vertices each joined to v_1, v_2, v_3."""
    if n < 6:
        raise GraphError("H4 needs n >= 6")
    g = g1()
    for _ in range(n - 6):
        g = g.add_vertex((V1, V2, V3))
    return g


FIXTURES = {"G1": g1, "G2": g2, "G3": g3, "H1": h1, "H2": h2}


def named_fixture(name: str) -> Graph:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise GraphError(f"unknown fixture {name!r}") from None


# ---------------------------------------------------------------- P_4 extremal graphs


def p4_extremal_family(n: int) -> list[Graph]:
    """Every n-vertex P_4-free graph with the maximum number of edges."""
    if n < 0:
        raise GraphError("negative order")
    tri = complete_graph(3)
    t, r = divmod(n, 3)
    if r == 0:
        return [disjoint_copies(tri, t)]
    # r=1: leftover K_1, stars on 3l+4 vertices; r=2: leftover K_2, stars on 3l+5
    family = [disjoint_union(disjoint_copies(tri, t), complete_graph(r))]
    for ell in range(t):
        family.append(disjoint_union(disjoint_copies(tri, t - ell - 1), star(3 * ell + 3 + r)))
    return family


def path_cliques(n: int, k: int) -> Graph:
    """t disjoint K_{k-1} plus a K_r, where n = (k-1)t + r."""
    t, r = divmod(n, k - 1)
    return disjoint_union(disjoint_copies(complete_graph(k - 1), t), complete_graph(r))


def path_join(n: int, k: int, s: int) -> Graph:
    """(t-s-1) K_{k-1} plus K_{(k-2)/2} joined to an independent set of k/2 + s(k-1) + r."""
    t, r = divmod(n, k - 1)
    if k % 2 or not 0 <= s < t:
        raise GraphError(f"path_join needs even k and 0 <= s < t, got k={k}, s={s}, t={t}")
    core = join(complete_graph((k - 2) // 2), empty_graph(k // 2 + s * (k - 1) + r))
    return disjoint_union(disjoint_copies(complete_graph(k - 1), t - s - 1), core)


def main_extremal(n: int, n_a: int, variant: int) -> Graph:
    """A P_4-extremal graph on n_a vertices joined to an independent set of n - n_a."""
    if not 0 <= n_a <= n:
        raise GraphError(f"need 0 <= n_a <= n, got n_a={n_a}, n={n}")
    family = p4_extremal_family(n_a)
    if not 0 <= variant < len(family):
        raise GraphError(f"variant {variant} out of range 0..{len(family) - 1}")
    return join(family[variant], empty_graph(n - n_a))


# ---------------------------------------------------------------- specs


@dataclass(frozen=True, order=True)
class ConstructionSpec:
    name: str
    params: tuple[int, ...] = ()

    def build(self) -> Graph:
        return build(self.name, *self.params)

    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}(" + ",".join(map(str, self.params)) + ")"


_BUILDERS = {
    "complete": complete,
    "empty": empty,
    "complete_bipartite": complete_bipartite,
    "path": path,
    "cycle": cycle,
    "star": star,
    "turan": turan_graph,
    "path_power": path_power,
    "prism": prism,
    "H": h_construction,
    "F": f_construction,
    "G1": g1,
    "G2": g2,
    "G3": g3,
    "H1": h1,
    "H2": h2,
    "H3": h3,
    "H4": h4,
    "path_cliques": path_cliques,
    "path_join": path_join,
    "p4_extremal": lambda n, variant: p4_extremal_family(n)[variant],
    "main_extremal": main_extremal,
}

CONSTRUCTION_NAMES = tuple(_BUILDERS)


def build(name: str, *params: int) -> Graph:
    try:
        fn = _BUILDERS[name]
    except KeyError:
        raise GraphError(f"unknown construction {name!r}") from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {name}: {params}") from exc
