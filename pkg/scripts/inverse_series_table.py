#!/usr/bin/env python3
"""Print the power-series expansion of the inverse quantum Cartan matrix.

Usage: python scripts/inverse_series_table.py [TYPE] [MMAX]
"""

import sys

from qgroth import cartan_datum, quantum_cartan


def main() -> None:
    name = sys.argv[1] if len(sys.argv) > 1 else "A4"
    mmax = int(sys.argv[2]) if len(sys.argv) > 2 else 20
    cd = cartan_datum(name)
    qc = quantum_cartan(cd)
    print(f"type {name}, Coxeter number {cd.coxeter_number()}, period {2 * cd.coxeter_number()}")
    for i in cd.vertices:
        for j in cd.vertices:
            if j < i:
                continue
            coeffs = qc.series(i, j, mmax)
            terms = []
            for m, c in enumerate(coeffs, start=1):
                if c:
                    sign = "-" if c < 0 else "+"
                    terms.append(f"{sign} {abs(c) if abs(c) != 1 else ''}z^{m}".replace("  ", " "))
            body = " ".join(terms).lstrip("+ ").strip()
            print(f"  C~[{i},{j}](z) = {body} + ...")


if __name__ == "__main__":
    main()
