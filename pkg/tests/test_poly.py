from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp

from alphaspec.poly import ALPHA, K, X, Poly, monomial_str

sx, sa, sk = sp.symbols("x alpha k")


def to_sympy(p: Poly):
    return sum(sp.Rational(c.numerator, c.denominator) * sx**m[0] * sa**m[1] * sk**m[2] for m, c in p.terms)


def random_poly(rng, terms=5, deg=3):
    return Poly(
        ((rng.randint(0, deg), rng.randint(0, deg), rng.randint(0, deg)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        for _ in range(terms)
    )


def test_arithmetic_matches_sympy(rng):
    for _ in range(60):
        p, q = random_poly(rng), random_poly(rng)
        assert sp.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
        assert sp.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0
        assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
        assert sp.expand(to_sympy(p**3) - to_sympy(p) ** 3) == 0


def test_structural_equality_and_zero():
    p = (X + ALPHA) ** 2
    assert p == X * X + 2 * X * ALPHA + ALPHA * ALPHA
    assert hash(p) == hash(X * X + 2 * X * ALPHA + ALPHA * ALPHA)
    assert (p - p).is_zero() and p - p == 0
    assert Poly.const(3) == 3
    with pytest.raises(ValueError):
        Poly({(1, 0): 1})
    with pytest.raises(ValueError):
        X ** -1


def test_inspection_and_evaluation():
    p = 3 * X**2 * K - ALPHA * X + 7
    assert p.degree("x") == 2 and p.degree("k") == 1
    assert p.coeff((2, 0, 1)) == 3
    assert p.coeff_in("x", 1) == -ALPHA
    assert p(x=2, alpha=Fraction(1, 2), k=1) == Fraction(18)
    assert p.substitute(k=2) == 6 * X**2 - ALPHA * X + 7
    assert p.substitute(alpha=X) == 3 * X**2 * K - X**2 + 7


def test_printing():
    assert str(Poly()) == "0"
    assert str(-X + 2) == "-x + 2"
    assert str(Fraction(1, 2) * X**2 * ALPHA) == "1/2*x^2*alpha"
    assert monomial_str((0, 2, 1)) == "alpha^2*k" and monomial_str((0, 0, 0)) == "1"
