"""Optimal Sturm bound against dim for a range of k; writes a CSV table.

    python3 scripts/conjecture_scan.py --max-k 20 --out results/conjecture.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from qmf.sturm import conjecture_scan


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-k", type=int, default=1)
    ap.add_argument("--max-k", type=int, default=20)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    rows = conjecture_scan(args.max_k, min_k=args.min_k, workers=args.workers)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(["k", "weight", "dim", "bound", "match"])
        for r in rows:
            w.writerow([r.k, 2 * r.k, r.dim, r.bound, r.match])
    finally:
        if args.out:
            fh.close()
    bad = [r.k for r in rows if not r.match]
    print(f"{len(rows)} weights in {time.perf_counter() - t0:.1f}s, mismatches: {bad or 'none'}",
          file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
