"""Exact multivariate polynomials in x, alpha, k with rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

VARS = ("x", "alpha", "k")
_INDEX = {name: i for i, name in enumerate(VARS)}

Monomial = tuple[int, int, int]
Scalar = Union[int, Fraction]


def _grlex_key(mono: Monomial) -> tuple:
    # descending graded lex with x > alpha > k
    return (-sum(mono), tuple(-e for e in mono))


class Poly:
    """Immutable polynomial; terms are kept sorted in graded lex order.

    Equal polynomials have equal ``terms`` tuples, so ``==`` and ``hash`` are
    structural.
    """

    __slots__ = ("terms",)

    def __init__(self, coeffs: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Monomial, Fraction] = {}
        for mono, c in items:
            if len(mono) != len(VARS) or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono}")
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(c)
        self.terms: tuple[tuple[Monomial, Fraction], ...] = tuple(
            sorted(((m, c) for m, c in acc.items() if c != 0), key=lambda t: _grlex_key(t[0]))
        )

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        mono = [0, 0, 0]
        mono[_INDEX[name]] = 1
        return cls({tuple(mono): 1})

    @staticmethod
    def lift(value: Union["Poly", Scalar]) -> "Poly":
        return value if isinstance(value, Poly) else Poly.const(value)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = Poly.lift(other)
        return Poly(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly((m, -c) for m, c in self.terms)

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        other = Poly.lift(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return Poly(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        out, base = Poly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection ---------------------------------------------------------
    def coeff(self, mono: Monomial) -> Fraction:
        for m, c in self.terms:
            if m == mono:
                return c
        return Fraction(0)

    def degree(self, name: str = "x") -> int:
        i = _INDEX[name]
        return max((m[i] for m, _ in self.terms), default=0)

    def coeff_in(self, name: str, power: int) -> "Poly":
        """Coefficient of ``name**power`` as a polynomial in the other variables."""
        i = _INDEX[name]
        out = []
        for m, c in self.terms:
            if m[i] == power:
                rest = list(m)
                rest[i] = 0
                out.append((tuple(rest), c))
        return Poly(out)

    def substitute(self, **values: Union["Poly", Scalar]) -> "Poly":
        out = Poly()
        for m, c in self.terms:
            term = Poly.const(c)
            keep = list(m)
            for name, val in values.items():
                i = _INDEX[name]
                if keep[i]:
                    term = term * Poly.lift(val) ** keep[i]
                    keep[i] = 0
            out = out + term * Poly({tuple(keep): 1})
        return out

    def __call__(self, x=0, alpha=0, k=0):
        """Evaluate; exact for rational arguments, float otherwise."""
        point = (x, alpha, k)
        total = 0
        for m, c in self.terms:
            term = c
            for val, e in zip(point, m):
                if e:
                    term = term * val**e
            total = total + term
        return total

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(VARS, m) if e]
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])


def monomial_str(mono: Monomial) -> str:
    factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(VARS, mono) if e]
    return "*".join(factors) or "1"


X = Poly.var("x")
ALPHA = Poly.var("alpha")
K = Poly.var("k")
