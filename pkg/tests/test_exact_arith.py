from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from aicwb.errors import DegenerateInputError, DomainMismatchError, UnsupportedError
from aicwb.exact_arith import (
    GF,
    QQ,
    ModP,
    Polynomial,
    RationalFunction,
    poly_divmod,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
)
from aicwb.parsing import parse_poly_expr


def P(text, domain=QQ):
    return parse_poly_expr(text, domain)


def test_scalars_are_normalized():
    assert ModP(7, 5).value == 2
    assert ModP(-1, 5).value == 4
    assert QQ(Fraction(6, -4)) == Fraction(-3, 2)
    assert QQ(Fraction(6, -4)).denominator == 2


def test_gcd_examples():
    assert poly_gcd(P("X^2 - 1"), P("X^2 - 2*X + 1")) == P("X - 1")
    assert poly_gcd(P("2*X^2 - 2"), Polynomial.zero()) == P("X^2 - 1")
    assert poly_gcd(P("X^2 - 2"), P("X + 1")) == P("1")


def test_gcd_rejects_mixed_domains():
    with pytest.raises(DomainMismatchError):
        poly_gcd(P("X"), P("X", GF(5)))


def test_squarefree_examples():
    assert squarefree_part(P("(X - 1)^2*(X + 2)")) == P("(X - 1)*(X + 2)")
    assert squarefree_part(P("X - 3")) == P("X - 3")
    assert squarefree_part(P("X^3 - X", GF(5))) == P("X^3 - X", GF(5))


def test_squarefree_rejects_inseparable_char_p():
    with pytest.raises(UnsupportedError):
        squarefree_part(P("X^2 + 1", GF(2)))


def test_resultant_examples():
    assert resultant(P("X"), P("Y"), "X") == P("Y")
    f = P("X^2 + Y*X + 1")
    assert resultant(f, f, "X").is_zero()
    assert resultant(P("X^2 - Y"), P("X - 1"), "X") == P("1 - Y")


def test_resultant_needs_the_variable():
    with pytest.raises(DegenerateInputError):
        resultant(P("Y"), P("Y + 1"), "X")


def test_divmod_examples():
    assert poly_divmod(P("X^2 - 1"), P("X - 1")) == (P("X + 1"), P("0"))
    assert poly_divmod(P("X^2 - 2"), P("X - 1")) == (P("X + 1"), P("-1"))
    f = P("3*X^4 - X + 7")
    assert poly_divmod(f, P("1")) == (f, P("0"))


def test_zero_polynomial_degree_sentinel():
    assert Polynomial.zero().degree("X") == float("-inf")


def test_rational_function_is_reduced():
    r = RationalFunction(P("Y^2 - 1"), P("2*Y - 2"), "Y")
    assert r.num == P("1/2*Y + 1/2") and r.den == P("1")
    assert r.is_polynomial()
    assert not RationalFunction(P("1"), P("Y"), "Y").is_polynomial()


def test_rational_roots():
    assert rational_roots([Fraction(-2), 0, 1], QQ) == []
    assert rational_roots([Fraction(-1), 0, 1], QQ) == [-1, 1]
    assert rational_roots([GF(5)(4), 0, 1], GF(5)) == [GF(5)(1), GF(5)(4)]


small = st.integers(min_value=-5, max_value=5)
coeff_lists = st.lists(small, min_size=1, max_size=5)


def upoly(coeffs, domain=QQ):
    return Polynomial.from_coefficients([domain(c) for c in coeffs], "X", domain)


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists.filter(lambda c: any(c)))
def test_divmod_reconstructs(a, b):
    f, g = upoly(a), upoly(b)
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree("X") < g.degree("X")


@settings(max_examples=60, deadline=None)
@given(coeff_lists.filter(lambda c: any(c)), coeff_lists.filter(lambda c: any(c)))
def test_gcd_divides_and_is_monic(a, b):
    f, g = upoly(a), upoly(b)
    d = poly_gcd(f, g)
    assert d.is_monic("X") or d.degree("X") == 0
    assert poly_divmod(f, d)[1].is_zero()
    assert poly_divmod(g, d)[1].is_zero()


@settings(max_examples=40, deadline=None)
@given(coeff_lists.filter(lambda c: any(c[1:])))
def test_squarefree_part_properties(a):
    f = upoly(a)
    s = squarefree_part(f)
    assert poly_divmod(f, s)[1].is_zero()
    assert poly_gcd(s, s.derivative("X")) == Polynomial.one()


@settings(max_examples=80, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([2, 3, 5, 7, 101]))
def test_field_axioms_mod_p(a, b, c, p):
    x, y, z = ModP(a, p), ModP(b, p), ModP(c, p)
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inverse() == ModP(1, p)


@settings(max_examples=60, deadline=None)
@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_field_axioms_rationals(a, b, c):
    x, y, z = QQ(a), QQ(b), QQ(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
