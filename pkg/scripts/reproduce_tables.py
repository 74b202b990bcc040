"""Print the closed-form values next to the exhaustive oracle, with extremal classes.

    python scripts/reproduce_tables.py --n-max 10 --threads 2
"""

import argparse
import logging

from prism_turan.canon import canonical_bytes
from prism_turan.constructions import path_power, prism
from prism_turan.containment import Pattern
from prism_turan.formulas import c3prism_turan, main_theorem_value, p6square_turan
from prism_turan.search import SearchConfig, auto_seed, turan_exact


def table(pattern: Pattern, formula, n_max: int, threads: int, seeded: bool) -> None:
    print(f"\nforbidden {pattern.name}")
    print(f"{'n':>3} {'formula':>8} {'oracle':>7} {'classes':>8}  constructions -> classes")
    for n in range(1, n_max + 1):
        fv = formula(n)
        seed = auto_seed(n, [pattern]) if seeded else None
        res = turan_exact(SearchConfig(n, [pattern], mode="enumerate", seed_lower_bound=seed,
                                       parallelism=threads, allow_large=True))
        named: dict[str, list[str]] = {}
        for spec in fv.family:
            named.setdefault(canonical_bytes(spec.build()).decode(), []).append(spec.label())
        flag = "" if res.max_edges == fv.value and sorted(named) == list(res.extremal) else "  MISMATCH"
        labels = "; ".join("=".join(v) for v in named.values())
        print(f"{n:>3} {fv.value:>8} {res.max_edges:>7} {len(res.extremal):>8}  {labels}{flag}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--unseeded", action="store_true", help="run without a construction lower bound")
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    table(Pattern.from_graph(prism(1), "prism:1"), c3prism_turan, args.n_max, args.threads, not args.unseeded)
    table(Pattern.from_graph(path_power(6, 2), "P^2:6"), p6square_turan, args.n_max, args.threads,
          not args.unseeded)

    print("\njoin construction value (every k) vs prism value")
    for n in range(6, 25):
        mv = main_theorem_value(n)
        print(f"{n:>3} {mv.value:>5} {c3prism_turan(n).value:>5}  n_a in {list(mv.maximizers)}")


if __name__ == "__main__":
    main()
