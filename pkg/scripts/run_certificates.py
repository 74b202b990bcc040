"""Write the certificate bundle for a profile and print a verdict summary.

    python scripts/run_certificates.py --profile full --out certificates/
"""

import argparse
import logging
import sys
import time

from prism_turan.verify import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--profile", choices=("quick", "full"), default="full")
    ap.add_argument("--out", default="certificates")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    t0 = time.perf_counter()
    report = run_all(args.profile, args.out, args.threads, progress=print)
    counts: dict[str, int] = {}
    for c in report["certificates"]:
        counts[c.verdict] = counts.get(c.verdict, 0) + 1
    print(f"\n{len(report['certificates'])} certificates in {time.perf_counter() - t0:.1f}s: {counts}")
    print(f"index: {report['index']}")
    if report["failed"]:
        print("FAILED:", ", ".join(report["failed"]))
    return 1 if report["failed"] else 0


if __name__ == "__main__":
    sys.exit(main())
