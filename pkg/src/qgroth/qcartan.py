"""The quantum Cartan matrix C(z), its inverse, and the commutation pairing.

C(z) replaces the diagonal 2 of the Cartan matrix by z + z^-1.  The inverse
has entries that are power series sum_{m>=1} c_ij(m) z^m with integer
coefficients, computable two independent ways:

  * series route: C(z)^-1 = sum_{k>=0} (z+z^-1)^(-k-1) A^k, expanding
    (z+z^-1)^(-k-1) = z^(k+1) (1+z^2)^(-k-1) with the binomial series, so only
    finitely many k contribute to each coefficient;
  * translation route: parity vanishing plus the coefficient of alpha_j in a
    Coxeter-power of gamma_i, read off any orientation of the diagram.

Coefficients are periodic in m with period twice the Coxeter number, which the
table validates once and then exploits for caching.
"""

from __future__ import annotations

from math import comb

from .cartan import CartanDatum
from .quiver import QuiverDatum


class QuantumCartan:
    def __init__(self, cartan: CartanDatum):
        self.cartan = cartan
        self.h = cartan.coxeter_number()
        self._table: dict[tuple[int, int, int], int] = {}
        self._apow: list[tuple[tuple[int, ...], ...]] = [
            tuple(tuple(1 if i == j else 0 for j in range(cartan.n)) for i in range(cartan.n))
        ]
        self._build_table()

    def _adj_power(self, k: int) -> tuple[tuple[int, ...], ...]:
        adj = self.cartan.adjacency_matrix()
        n = self.cartan.n
        while len(self._apow) <= k:
            prev = self._apow[-1]
            self._apow.append(
                tuple(
                    tuple(sum(prev[i][l] * adj[l][j] for l in range(n)) for j in range(n))
                    for i in range(n)
                )
            )
        return self._apow[k]

    def series_coeff(self, i: int, j: int, m: int) -> int:
        """Coefficient of z^m in row i, column j of the inverse, by the series route."""
        if m <= 0:
            return 0
        total = 0
        for k in range(m):
            if (m - 1 - k) % 2 != 0:
                continue
            ell = (m - 1 - k) // 2
            a = self._adj_power(k)[i - 1][j - 1]
            if a:
                total += a * (-1) ** ell * comb(k + ell, ell)
        return total

    def series(self, i: int, j: int, m_max: int) -> list[int]:
        return [self.series_coeff(i, j, m) for m in range(1, m_max + 1)]

    def _build_table(self) -> None:
        n, h = self.cartan.n, self.h
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                for m in range(1, 2 * h + 1):
                    v = self.series_coeff(i, j, m)
                    self._table[(i, j, m)] = v
                    self._table[(j, i, m)] = v
        # Validate the period-2h property on a second window before trusting it.
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for m in range(1, 2 * h + 1):
                    if self.series_coeff(i, j, m + 2 * h) != self._table[(i, j, m)]:
                        raise AssertionError("periodicity of the inverse table failed")

    def ctilde(self, i: int, j: int, m: int) -> int:
        """Inverse coefficient with the conventions c(m) = 0 for m <= 0 and
        period 2h for m >= 1."""
        if m <= 0:
            return 0
        m = (m - 1) % (2 * self.h) + 1
        return self._table[(i, j, m)]

    def ar_value(self, i: int, j: int, m: int, quiver: QuiverDatum) -> int:
        """Inverse coefficient via the translation formula on an orientation."""
        if quiver.cartan != self.cartan:
            raise ValueError("quiver is over a different Cartan datum")
        if m <= 0:
            return 0
        xi = quiver.xi
        s = m + xi[i - 1] - xi[j - 1] - 1
        if s % 2 != 0:
            return 0
        ell = s // 2
        w = quiver.tau_power(quiver.gamma(i), ell)
        return self.cartan.sprod(w, self.cartan.varpi(j))

    def verify_inverse(self, m_max: int) -> tuple[bool, tuple | None]:
        """Check C(z) * table = identity through z^m_max; returns a witness on failure."""
        n = self.cartan.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for m in range(0, m_max + 1):
                    lhs = self.ctilde(i, j, m - 1) + self.ctilde(i, j, m + 1)
                    for k in self.cartan.neighbors(i):
                        lhs -= self.ctilde(k, j, m)
                    want = 1 if (i == j and m == 0) else 0
                    if lhs != want:
                        return False, (i, j, m, lhs, want)
        return True, None

    def n_pair(self, i: int, p: int, j: int, s: int) -> int:
        """The antisymmetric commutation exponent between variables at (i,p), (j,s)."""
        return (
            self.ctilde(i, j, p - s - 1)
            - self.ctilde(i, j, p - s + 1)
            - self.ctilde(i, j, s - p - 1)
            + self.ctilde(i, j, s - p + 1)
        )


_registry: dict[str, QuantumCartan] = {}


def quantum_cartan(cartan: CartanDatum) -> QuantumCartan:
    key = f"{cartan.kind}{cartan.n}"
    if key not in _registry:
        _registry[key] = QuantumCartan(cartan)
    return _registry[key]


CACHE_VERSION = 1


def tables_to_json() -> dict:
    """Serialize every instantiated inverse table (the CLI memo-cache format)."""
    return {
        "version": CACHE_VERSION,
        "tables": {
            key: [[i, j, m, v] for (i, j, m), v in sorted(qc._table.items())]
            for key, qc in _registry.items()
        },
    }


def load_tables_json(data: dict) -> int:
    """Pre-populate inverse tables from a cache file.  Each loaded table is
    re-validated (shape and the inverse identity over one period) before being
    trusted; rejected tables are simply recomputed later.  Returns the number
    accepted."""
    if data.get("version") != CACHE_VERSION:
        return 0
    accepted = 0
    for name, rows in data.get("tables", {}).items():
        try:
            cd = CartanDatum(name[0], int(name[1:]))
        except (ValueError, IndexError):
            continue
        qc = QuantumCartan.__new__(QuantumCartan)
        qc.cartan = cd
        qc.h = cd.coxeter_number()
        qc._apow = [
            tuple(tuple(1 if i == j else 0 for j in range(cd.n)) for i in range(cd.n))
        ]
        qc._table = {(int(i), int(j), int(m)): int(v) for i, j, m, v in rows}
        want = {
            (i, j, m)
            for i in cd.vertices
            for j in cd.vertices
            for m in range(1, 2 * qc.h + 1)
        }
        if set(qc._table) != want or not qc.verify_inverse(2 * qc.h)[0]:
            continue
        _registry[name] = qc
        accepted += 1
    return accepted
