"""Time the oracle by order, seeding and worker count; writes a CSV to stdout.

    python scripts/benchmark_search.py --n-max 11 --workers 1 2 4
"""

import argparse
import csv
import logging
import sys

from prism_turan.constructions import path_power, prism
from prism_turan.containment import Pattern
from prism_turan.search import SearchConfig, auto_seed, turan_exact

PATTERNS = {"prism:1": prism(1), "P^2:6": path_power(6, 2), "prism:2": prism(2)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-min", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--pattern", choices=sorted(PATTERNS), default="prism:1")
    ap.add_argument("--workers", type=int, nargs="+", default=[1])
    ap.add_argument("--mode", choices=("max", "enumerate"), default="enumerate")
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    pat = Pattern.from_graph(PATTERNS[args.pattern], args.pattern)
    out = csv.writer(sys.stdout)
    out.writerow(["n", "seeded", "workers", "max_edges", "classes", "nodes", "pruned", "seconds"])
    for n in range(args.n_min, args.n_max + 1):
        for seeded in (False, True):
            seed = auto_seed(n, [pat]) if seeded else None
            for w in args.workers:
                res = turan_exact(SearchConfig(n, [pat], mode=args.mode, seed_lower_bound=seed,
                                               parallelism=w, allow_large=True))
                out.writerow([n, seeded, w, res.max_edges, len(res.extremal), res.nodes_explored,
                              res.pruned_by_bound, f"{res.wall_time:.3f}"])
                sys.stdout.flush()


if __name__ == "__main__":
    main()
