"""Closed-form Turan numbers with their predicted extremal families."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .constructions import ConstructionSpec, f_star_sizes


@dataclass(frozen=True)
class FormulaValue:
    value: int
    family: tuple[ConstructionSpec, ...] = ()
    exception_note: str | None = None
    maximizers: tuple[int, ...] = ()
    regime: str = "exact"  # "formula-only" when validity depends on n being large

    def to_dict(self) -> dict:
        out = {
            "value": self.value,
            "family": [s.label() for s in self.family],
            "regime": self.regime,
        }
        if self.exception_note:
            out["exception_note"] = self.exception_note
        if self.maximizers:
            out["maximizers"] = list(self.maximizers)
        return out


def mantel(n: int) -> int:
    return n * n // 4


def p4_variant_count(n: int) -> int:
    """len(p4_extremal_family(n)) without building the graphs."""
    t, r = divmod(n, 3)
    return 1 if r == 0 else t + 1


def _p4_specs(n: int) -> tuple[ConstructionSpec, ...]:
    return tuple(ConstructionSpec("p4_extremal", (n, v)) for v in range(p4_variant_count(n)))


def _p4_value(n: int) -> int:
    j = n % 3
    return n + (j * j - 3 * j) // 2


def p4_turan(n: int) -> FormulaValue:
    if n < 0:
        raise ValueError("negative order")
    return FormulaValue(_p4_value(n), _p4_specs(n))


def path_turan(n: int, k: int) -> FormulaValue:
    """ex(n, P_k) as t*C(k-1,2) + C(r,2) with n = (k-1)t + r."""
    if k < 2:
        raise ValueError("path_turan needs k >= 2")
    if n < 0:
        raise ValueError("negative order")
    if n < k - 1:
        return FormulaValue(comb(n, 2), (ConstructionSpec("complete", (n,)),))
    t, r = divmod(n, k - 1)
    value = t * comb(k - 1, 2) + comb(r, 2)
    family = [ConstructionSpec("path_cliques", (n, k))]
    if k % 2 == 0 and r in (k // 2, (k - 2) // 2):
        family += [ConstructionSpec("path_join", (n, k, s)) for s in range(t)]
    return FormulaValue(value, tuple(family))


def c3prism_value(n: int) -> int:
    """The piecewise expression alone (it undercounts at n = 5)."""
    base = n * n // 4
    if n % 6 in (1, 2, 3):
        return base + (n - 1) // 2
    return base + (n + 1) // 2


def _residue_family(n: int) -> tuple[ConstructionSpec, ...]:
    half_down, half_up = n // 2, (n + 1) // 2

    def fs(i: int) -> list[ConstructionSpec]:
        return [ConstructionSpec("F", (n, i, j)) for j in f_star_sizes(i)]

    def h(i: int) -> list[ConstructionSpec]:
        return [ConstructionSpec("H", (n, i))]

    table = {
        0: lambda: h(n // 2),
        1: lambda: fs(half_up) + h(half_down),
        2: lambda: fs(n // 2) + fs(n // 2 + 1),
        3: lambda: fs(half_up) + h(half_up + 1),
        4: lambda: h(n // 2 + 1),
        5: lambda: h(half_up),
    }
    return tuple(table[n % 6]())


def p6square_family(n: int) -> tuple[ConstructionSpec, ...]:
    if n < 6:
        return (ConstructionSpec("complete", (n,)),)
    return _residue_family(n)


def c3prism_family(n: int) -> tuple[ConstructionSpec, ...]:
    if n <= 5:
        return (ConstructionSpec("complete", (n,)),)
    extra = {6: "G1", 7: "G2", 8: "G3"}.get(n)
    if extra:
        return (ConstructionSpec(extra),) + _residue_family(n)
    return _residue_family(n)


_N5_NOTE = "n=5: K_5 has 10 edges, one more than the piecewise expression gives"


def c3prism_number(n: int) -> int:
    """Value of c3prism_turan(n) without building the extremal family."""
    if n < 0:
        raise ValueError("negative order")
    return comb(n, 2) if n <= 5 else c3prism_value(n)


def main_theorem_number(n: int) -> int:
    return max(a * (n - a) + _p4_value(a) for a in range(n + 1))


def c3prism_turan(n: int) -> FormulaValue:
    if n < 0:
        raise ValueError("negative order")
    if n <= 4:
        return FormulaValue(comb(n, 2), c3prism_family(n))
    if n == 5:
        return FormulaValue(10, c3prism_family(5), exception_note=_N5_NOTE)
    return FormulaValue(c3prism_value(n), c3prism_family(n))


def p6square_turan(n: int) -> FormulaValue:
    if n < 0:
        raise ValueError("negative order")
    if n <= 4:
        return FormulaValue(comb(n, 2), p6square_family(n))
    if n == 5:
        return FormulaValue(10, p6square_family(5), exception_note=_N5_NOTE)
    return FormulaValue(c3prism_value(n), p6square_family(n))


def main_theorem_value(n: int, k: int = 1) -> FormulaValue:
    """max over n_a + n_b = n of n_a * n_b + ex(n_a, P_4), with every maximising n_a.

    The same value is predicted for every k; it is only proved for large n, so
    results for k >= 2 carry regime "formula-only".
    """
    if n < 0:
        raise ValueError("negative order")
    scores = {n_a: n_a * (n - n_a) + _p4_value(n_a) for n_a in range(n + 1)}
    best = max(scores.values())
    maximizers = tuple(a for a, s in scores.items() if s == best)
    family = tuple(
        ConstructionSpec("main_extremal", (n, a, v))
        for a in maximizers
        for v in range(p4_variant_count(a))
    )
    return FormulaValue(best, family, maximizers=maximizers, regime="exact" if k == 1 else "formula-only")
