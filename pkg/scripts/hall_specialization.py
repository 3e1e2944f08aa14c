#!/usr/bin/env python3
"""Brute-force derived Hall check: verify the defining relations from counted
Hall numbers, then print the per-class rescaling scalars relating products of
character-side generators to products of Hall-side generators.

Usage: python scripts/hall_specialization.py [TYPE] [Q] [MAXLEN]
"""

import sys

from qgroth import CategoryQ, QuiverContext, QuiverDatum, cartan_datum
from qgroth.hall import iota_check


def main() -> None:
    name = sys.argv[1] if len(sys.argv) > 1 else "A2"
    q = int(sys.argv[2]) if len(sys.argv) > 2 else 2
    max_len = int(sys.argv[3]) if len(sys.argv) > 3 else 3
    cat = CategoryQ(QuiverContext(QuiverDatum.bipartite(cartan_datum(name))))
    rep = iota_check(cat, q, max_len=max_len, m_offsets=range(4))
    print(f"type {name}, |F| = {q}")
    print("constant identity:", "ok" if rep["constant_identity"] else "FAIL")
    print("relation failures:", len(rep["relation_failures"]))
    print("scalar table consistent across products:", rep["consistent"])
    print("per-class scalars (exponent vector -> scalar in Q(q^(1/4))):")
    for a, s in sorted(rep["scalars"].items()):
        print(f"  {a}: {s}")


if __name__ == "__main__":
    main()
