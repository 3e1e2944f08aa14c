"""Quantum tori over Z[t^(1/2), t^(-1/2)].

Two instances of the same structure are used:

  * the big torus on variables Y_{i,p} indexed by the repetition quiver, with
    commutation exponents given by the inverse quantum Cartan matrix;
  * the rank-r torus on rescaled flag-minor generators X_1 .. X_r, with
    commutation exponents given by scalar products of the roots beta_k.

Both are presented through their basis of *symmetrized* monomials: the product
of two basis monomials is t^(pair/2) times the basis monomial of the summed
exponent, where pair is an antisymmetric integer pairing on exponents.  The
bar involution (t^(1/2) -> t^(-1/2) fixing basis monomials) is coefficientwise
conjugation in this basis, on either side.

Exact division (solving q * p = s or p * q = s) is by leading-term elimination
with respect to a multiplication-compatible total order on exponents.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .cartan import Weight
from .laurent import HalfLaurent
from .qcartan import QuantumCartan


class Monomial:
    """Laurent monomial in the variables Y_{i,p}: a finite map (i,p) -> Z\\{0}.

    Canonical storage: entries ((i,p), e) sorted by (p, i).  Hashable.
    """

    __slots__ = ("items", "_hash")

    def __init__(self, exps: dict[tuple[int, int], int] | None = None):
        items = tuple(
            ((i, p), e)
            for (p, i), e in sorted(
                ((p, i), e) for (i, p), e in (exps or {}).items() if e != 0
            )
        )
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_hash", hash(items))

    def __setattr__(self, *a):  # pragma: no cover - guard against mutation
        raise AttributeError("Monomial is immutable")

    @staticmethod
    def unit() -> "Monomial":
        return Monomial()

    @staticmethod
    def var(i: int, p: int, e: int = 1) -> "Monomial":
        return Monomial({(i, p): e})

    def exps(self) -> dict[tuple[int, int], int]:
        return {k: e for k, e in self.items}

    def exp(self, i: int, p: int) -> int:
        for k, e in self.items:
            if k == (i, p):
                return e
        return 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        out = self.exps()
        for k, e in other.items:
            out[k] = out.get(k, 0) + e
        return Monomial(out)

    def inverse(self) -> "Monomial":
        return Monomial({k: -e for k, e in self.items})

    def power(self, n: int) -> "Monomial":
        return Monomial({k: n * e for k, e in self.items})

    def is_unit(self) -> bool:
        return not self.items

    def is_dominant(self) -> bool:
        return all(e >= 0 for _, e in self.items)

    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(k for k, _ in self.items)

    def min_p(self) -> int:
        return min(p for (_, p), _ in self.items)

    def max_p(self) -> int:
        return max(p for (_, p), _ in self.items)

    def shift_p(self, delta: int) -> "Monomial":
        return Monomial({(i, p + delta): e for (i, p), e in self.items})

    def sort_key(self):
        """Lex key over the variable axis ordered by (p, i); addition-compatible."""
        return _MonKey(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({self.render()})"

    def render(self) -> str:
        if not self.items:
            return "1"
        bits = []
        for (i, p), e in self.items:
            bits.append(f"Y[{i},{p}]" + (f"^{e}" if e != 1 else ""))
        return " ".join(bits)

    def to_json(self) -> list[list[int]]:
        return [[i, p, e] for (i, p), e in self.items]

    @staticmethod
    def from_json(data: Iterable[Iterable[int]]) -> "Monomial":
        return Monomial({(int(i), int(p)): int(e) for i, p, e in data})


class _MonKey:
    """Comparison wrapper implementing sparse lex order on monomials."""

    __slots__ = ("m",)

    def __init__(self, m: Monomial):
        self.m = m

    def _cmp(self, other: "_MonKey") -> int:
        a = {(p, i): e for (i, p), e in self.m.items}
        b = {(p, i): e for (i, p), e in other.m.items}
        for k in sorted(set(a) | set(b)):
            d = a.get(k, 0) - b.get(k, 0)
            if d:
                return 1 if d > 0 else -1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        return self._cmp(other) == 0


class YTorus:
    """Pairing context for the big torus: exponent of t in Y-monomial swaps."""

    def __init__(self, qc: QuantumCartan):
        self.qc = qc
        self.cartan = qc.cartan

    def pair2(self, m1: Monomial, m2: Monomial) -> int:
        total = 0
        for (i, p), u in m1.items:
            for (j, s), v in m2.items:
                if p != s:
                    total += u * v * self.qc.n_pair(i, p, j, s)
        return total

    key_one = staticmethod(Monomial.unit)
    key_mul = staticmethod(lambda a, b: a * b)
    key_inv = staticmethod(lambda a: a.inverse())
    key_sort = staticmethod(lambda a: a.sort_key())

    def element(self, terms: dict[Monomial, HalfLaurent]) -> "TorusElement":
        return TorusElement(self, terms)

    def monomial(self, m: Monomial, coeff: HalfLaurent | None = None) -> "TorusElement":
        return TorusElement(self, {m: coeff if coeff is not None else HalfLaurent.one()})

    def one(self) -> "TorusElement":
        return self.monomial(Monomial.unit())

    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def a_monomial(self, i: int, p: int) -> Monomial:
        """The exchange monomial at (i,p): Y_{i,p+1} Y_{i,p-1} prod_{j~i} Y_{j,p}^-1."""
        exps = {(i, p + 1): 1, (i, p - 1): 1}
        for j in self.cartan.neighbors(i):
            exps[(j, p)] = exps.get((j, p), 0) - 1
        return Monomial(exps)

    def a_solve(self, ratio: Monomial) -> Optional[dict[tuple[int, int], int]]:
        """Write ratio as a product prod A_{i,s}^{v_{i,s}} with integer exponents.

        Returns the (unique) exponent map, or None when no integer solution
        exists.  Solved top-down: the Y-exponent at (j, u) equals
        v_{j,u-1} + v_{j,u+1} - sum_{k~j} v_{k,u}.
        """
        if ratio.is_unit():
            return {}
        e = ratio.exps()
        top = ratio.max_p()
        bot = ratio.min_p()
        v: dict[tuple[int, int], int] = {}
        for u in range(top, bot - 1, -1):
            for j in self.cartan.vertices:
                # exponent of Y_{j,u} determines v_{j,u-1} from layers above
                want = e.get((j, u), 0)
                acc = v.get((j, u + 1), 0)
                for k in self.cartan.neighbors(j):
                    acc -= v.get((k, u), 0)
                v[(j, u - 1)] = want - acc
        v = {k: c for k, c in v.items() if c != 0}
        # verify (the bottom rows of the system were never imposed)
        check: dict[tuple[int, int], int] = {}
        for (j, s), c in v.items():
            check[(j, s + 1)] = check.get((j, s + 1), 0) + c
            check[(j, s - 1)] = check.get((j, s - 1), 0) + c
            for k in self.cartan.neighbors(j):
                check[(k, s)] = check.get((k, s), 0) - c
        check = {k: c for k, c in check.items() if c != 0}
        return v if check == e else None

    def nakajima_leq(self, m1: Monomial, m2: Monomial) -> bool:
        """m1 <= m2 iff m2 * m1^-1 is a product of A_{i,p} with multiplicities in N."""
        v = self.a_solve(m2 * m1.inverse())
        return v is not None and all(c >= 0 for c in v.values())


class TorusElement:
    """Finite linear combination of basis monomials with Laurent coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms: dict):
        self.ctx = ctx
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusElement) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("TorusElement is not hashable")

    def coeff(self, key) -> HalfLaurent:
        return self.terms.get(key, HalfLaurent.zero())

    def __add__(self, other: "TorusElement") -> "TorusElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            w = out.get(k)
            w = c if w is None else w + c
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return TorusElement(self.ctx, out)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scal(self, c: HalfLaurent) -> "TorusElement":
        return TorusElement(self.ctx, {k: v * c for k, v in self.terms.items()})

    def tshift(self, exp2: int) -> "TorusElement":
        return TorusElement(self.ctx, {k: v.shift(exp2) for k, v in self.terms.items()})

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        ctx = self.ctx
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = ctx.key_mul(k1, k2)
                c = (c1 * c2).shift(ctx.pair2(k1, k2))
                w = out.get(k)
                w = c if w is None else w + c
                if w.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = w
        return TorusElement(ctx, out)

    def bar(self) -> "TorusElement":
        """Coefficientwise t^(1/2) -> t^(-1/2); the ring anti-automorphism fixing
        basis monomials."""
        return TorusElement(self.ctx, {k: c.conj() for k, c in self.terms.items()})

    def leading_key(self):
        return max(self.terms, key=self.ctx.key_sort)

    def support(self):
        return list(self.terms.keys())

    def num_terms(self) -> int:
        return len(self.terms)

    def map_keys(self, fn: Callable, new_ctx=None) -> "TorusElement":
        out: dict = {}
        for k, c in self.terms.items():
            nk = fn(k)
            if nk in out:
                out[nk] = out[nk] + c
            else:
                out[nk] = c
        return TorusElement(new_ctx if new_ctx is not None else self.ctx, out)

    def dominant_terms(self) -> dict:
        return {k: c for k, c in self.terms.items() if k.is_dominant()}

    def __repr__(self) -> str:
        return f"TorusElement({self.render()})"

    def render(self, var: str = "t") -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=self.ctx.key_sort, reverse=True)
        bits = []
        for k in keys:
            c = self.terms[k]
            kr = k.render() if hasattr(k, "render") else render_xkey(k)
            if c.is_one():
                bits.append(kr if kr != "1" else "1")
            else:
                cs = c.render(var)
                if len(c.c) > 1:
                    cs = f"({cs})"
                bits.append(f"{cs} {kr}" if kr != "1" else cs)
        return " + ".join(bits)

    def to_json(self) -> list:
        keys = sorted(self.terms, key=self.ctx.key_sort)
        return [
            [
                k.to_json() if hasattr(k, "to_json") else list(k),
                self.terms[k].to_json(),
            ]
            for k in keys
        ]


def y_element_from_json(ctx: YTorus, data: list) -> TorusElement:
    return TorusElement(
        ctx, {Monomial.from_json(k): HalfLaurent.from_json(c) for k, c in data}
    )


def render_xkey(a: tuple) -> str:
    if all(e == 0 for e in a):
        return "1"
    bits = []
    for k, e in enumerate(a, start=1):
        if e:
            bits.append(f"X{k}" + (f"^{e}" if e != 1 else ""))
    return " ".join(bits)


class XTorus:
    """Pairing context for the rank-r torus on the rescaled generators X_k.

    Exponent keys are integer r-tuples a, with
    X^a X^b = t^(pair/2) X^(a+b),  pair = sum_{k<l} (beta_k, beta_l)(a_l b_k - a_k b_l).
    """

    def __init__(self, betas: tuple[Weight, ...], cartan):
        self.r = len(betas)
        self.betas = betas
        self.s = [
            [cartan.sprod(betas[k], betas[l]) for l in range(self.r)] for k in range(self.r)
        ]

    def pair2(self, a: tuple, b: tuple) -> int:
        total = 0
        r = self.r
        for k in range(r):
            ak, bk = a[k], b[k]
            if ak == 0 and bk == 0:
                continue
            srow = self.s[k]
            for l in range(k + 1, r):
                if a[l] or b[l]:
                    total += srow[l] * (a[l] * bk - ak * b[l])
        return total

    def key_one(self) -> tuple:
        return (0,) * self.r

    @staticmethod
    def key_mul(a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def key_inv(a: tuple) -> tuple:
        return tuple(-x for x in a)

    @staticmethod
    def key_sort(a: tuple) -> tuple:
        return a

    def element(self, terms: dict[tuple, HalfLaurent]) -> TorusElement:
        return TorusElement(self, terms)

    def monomial(self, a: tuple, coeff: HalfLaurent | None = None) -> TorusElement:
        return TorusElement(self, {tuple(a): coeff if coeff is not None else HalfLaurent.one()})

    def one(self) -> TorusElement:
        return self.monomial(self.key_one())

    def zero(self) -> TorusElement:
        return TorusElement(self, {})

    def unit_vector(self, k: int) -> tuple:
        return tuple(1 if j == k - 1 else 0 for j in range(self.r))

    def x_product(self, a: tuple, b: tuple) -> tuple[HalfLaurent, tuple]:
        """Scalar and exponent of X^a X^b."""
        return HalfLaurent.t_power(self.pair2(a, b)), self.key_mul(tuple(a), tuple(b))


def divide_right(s: TorusElement, p: TorusElement) -> TorusElement:
    """The unique q with q * p = s; raises when the division is not exact."""
    ctx = s.ctx
    if p.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    lead_p = p.leading_key()
    lead_pc = p.terms[lead_p]
    lead_p_inv = ctx.key_inv(lead_p)
    rem = TorusElement(ctx, dict(s.terms))
    quot: dict = {}
    guard = 0
    while rem:
        guard += 1
        if guard > 10000:
            raise ArithmeticError("torus division did not terminate")
        lk = rem.leading_key()
        qk = ctx.key_mul(lk, lead_p_inv)
        c = rem.terms[lk].shift(-ctx.pair2(qk, lead_p)).exact_div(lead_pc)
        if c is None:
            raise ArithmeticError("torus division is not exact (coefficient step)")
        quot[qk] = quot.get(qk, HalfLaurent.zero()) + c
        rem = rem - TorusElement(ctx, {qk: c}) * p
    return TorusElement(ctx, quot)


def divide_left(p: TorusElement, s: TorusElement) -> TorusElement:
    """The unique q with p * q = s; raises when the division is not exact."""
    ctx = s.ctx
    if p.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    lead_p = p.leading_key()
    lead_pc = p.terms[lead_p]
    lead_p_inv = ctx.key_inv(lead_p)
    rem = TorusElement(ctx, dict(s.terms))
    quot: dict = {}
    guard = 0
    while rem:
        guard += 1
        if guard > 10000:
            raise ArithmeticError("torus division did not terminate")
        lk = rem.leading_key()
        qk = ctx.key_mul(lead_p_inv, lk)
        c = rem.terms[lk].shift(-ctx.pair2(lead_p, qk)).exact_div(lead_pc)
        if c is None:
            raise ArithmeticError("torus division is not exact (coefficient step)")
        quot[qk] = quot.get(qk, HalfLaurent.zero()) + c
        rem = rem - p * TorusElement(ctx, {qk: c})
    return TorusElement(ctx, quot)


def monomial_inverse_element(ctx, key) -> TorusElement:
    return TorusElement(ctx, {ctx.key_inv(key): HalfLaurent.one()})
