"""Saturation index, prime factorization and mod-p determination rows per weight.

For each weight: the index of the monomial lattice in the integral forms, the
replacements made per prime, and for small primes the number of coefficients
needed before the saturated basis is determined mod p.

    python3 scripts/saturation_table.py --max-weight 24
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter

import sympy

from qmf.zbasis import determines_mod, saturate

SMALL = (2, 3, 5, 7, 11, 13)


def mod_rows(zb, p: int, limit: int) -> int | None:
    d = len(zb.elements)
    mat = zb.matrix(limit)
    for r in range(d, limit + 1):
        if determines_mod(mat.truncate(r), p):
            return r
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-weight", type=int, default=24)
    args = ap.parse_args(argv)
    print("weight\tdim\tindex factorization\tsteps per prime\trows to determine mod p (" +
          ",".join(map(str, SMALL)) + ")\tseconds")
    for w in range(2, args.max_weight + 1, 2):
        t0 = time.perf_counter()
        zb = saturate(w)
        d = len(zb.elements)
        fac = sympy.factorint(zb.index_removed)
        fac_s = "*".join(f"{p}^{e}" for p, e in sorted(fac.items())) or "1"
        per = Counter(s.prime for s in zb.steps)
        rows = [mod_rows(zb, p, 3 * d + 10) for p in SMALL]
        print(f"{w}\t{d}\t{fac_s}\t{dict(sorted(per.items()))}\t{rows}\t{time.perf_counter() - t0:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
