"""Exact Laurent polynomials in a half-integer power of a deformation parameter.

Coefficients are arbitrary-precision integers; exponents are half-integers
stored as doubled ints, so the monomial t^(k/2) sits under the key k.  The
same ring serves both t^(1/2) (deformed Grothendieck rings) and v^(1/2)
(quantized enveloping algebras); only the display name differs.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class HalfLaurent:
    """Sparse Laurent polynomial in t^(1/2) over the integers.

    Immutable by convention: all operations return fresh objects.  Zero
    coefficients are never stored.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.c = {e: v for e, v in (coeffs or {}).items() if v != 0}

    @staticmethod
    def zero() -> "HalfLaurent":
        return HalfLaurent()

    @staticmethod
    def one() -> "HalfLaurent":
        return HalfLaurent({0: 1})

    @staticmethod
    def term(coeff: int, exp2: int = 0) -> "HalfLaurent":
        """coeff * t^(exp2/2)."""
        return HalfLaurent({exp2: coeff})

    @staticmethod
    def t_power(exp2: int) -> "HalfLaurent":
        return HalfLaurent({exp2: 1})

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_one(self) -> bool:
        return self.c == {0: 1}

    def is_unit_monomial(self) -> bool:
        """Single term with coefficient +-1, i.e. a unit of the ring."""
        return len(self.c) == 1 and abs(next(iter(self.c.values()))) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return HalfLaurent(out)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({e: -v for e, v in self.c.items()})

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other: "HalfLaurent") -> "HalfLaurent":
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return HalfLaurent(out)

    def scale(self, k: int) -> "HalfLaurent":
        if k == 0:
            return HalfLaurent()
        return HalfLaurent({e: k * v for e, v in self.c.items()})

    def shift(self, exp2: int) -> "HalfLaurent":
        """Multiply by t^(exp2/2)."""
        return HalfLaurent({e + exp2: v for e, v in self.c.items()})

    def conj(self) -> "HalfLaurent":
        """The substitution t^(1/2) -> t^(-1/2)."""
        return HalfLaurent({-e: v for e, v in self.c.items()})

    def is_symmetric(self) -> bool:
        return all(self.c.get(-e, 0) == v for e, v in self.c.items())

    def is_antisymmetric(self) -> bool:
        return all(self.c.get(-e, 0) == -v for e, v in self.c.items())

    def negative_part(self) -> "HalfLaurent":
        """Terms with strictly negative exponent."""
        return HalfLaurent({e: v for e, v in self.c.items() if e < 0})

    def in_tinv_ztinv(self) -> bool:
        """True iff all exponents are <= -2, i.e. the value lies in t^-1 Z[t^-1]."""
        return all(e <= -2 for e in self.c)

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.c.values())

    def integer_powers_only(self) -> bool:
        return all(e % 2 == 0 for e in self.c)

    def max_exp2(self) -> int:
        return max(self.c)

    def min_exp2(self) -> int:
        return min(self.c)

    def value_at_one(self) -> int:
        return sum(self.c.values())

    def exact_div(self, other: "HalfLaurent") -> "HalfLaurent | None":
        """Exact quotient self/other, or None when the division has a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return HalfLaurent()
        lead_e = other.max_exp2()
        lead_c = other.c[lead_e]
        rem = dict(self.c)
        quot: dict[int, int] = {}
        # Ordinary long division from the top; Laurent shifts are units.
        for _ in range(len(self.c) + len(other.c) + abs(self.max_exp2() - self.min_exp2()) + 2):
            if not rem:
                return HalfLaurent(quot)
            e = max(rem)
            v = rem[e]
            if v % lead_c != 0:
                return None
            q = v // lead_c
            qe = e - lead_e
            quot[qe] = quot.get(qe, 0) + q
            for oe, ov in other.c.items():
                te = qe + oe
                w = rem.get(te, 0) - q * ov
                if w:
                    rem[te] = w
                else:
                    rem.pop(te, None)
        return None if rem else HalfLaurent(quot)

    def substitute(self, half_unit, one):
        """Evaluate at t^(1/2) = half_unit inside another ring.

        `one` is the multiplicative unit of the target ring; the target only
        needs +, * and integer scaling via repeated addition of products.
        """
        acc = None
        for e, v in sorted(self.c.items()):
            term = one
            if e >= 0:
                for _ in range(e):
                    term = term * half_unit
            else:
                inv = half_unit.inverse()
                for _ in range(-e):
                    term = term * inv
            term = term.scale_int(v)
            acc = term if acc is None else acc + term
        return acc if acc is not None else one.scale_int(0)

    def __repr__(self) -> str:
        return f"HalfLaurent({self.render()})"

    def render(self, var: str = "t") -> str:
        if not self.c:
            return "0"
        bits = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            if e == 0:
                body = str(abs(v))
            else:
                p = f"{var}^{e // 2}" if e % 2 == 0 else f"{var}^{e}/2".replace(f"{e}/2", f"({e}/2)")
                if e % 2 != 0:
                    p = f"{var}^({e}/2)"
                elif e == 2:
                    p = var
                body = p if abs(v) == 1 else f"{abs(v)}*{p}"
            sign = "-" if v < 0 else "+"
            bits.append((sign, body))
        head_sign, head = bits[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in bits[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[list[int]]:
        return [[e, self.c[e]] for e in sorted(self.c)]

    @staticmethod
    def from_json(data: Iterable[Iterable[int]]) -> "HalfLaurent":
        return HalfLaurent({int(e): int(v) for e, v in data})

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self.c.items())


ZERO = HalfLaurent.zero()
ONE = HalfLaurent.one()
