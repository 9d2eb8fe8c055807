import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kellerid.algebra import (
    ONE,
    ZERO,
    MPoly,
    NonConformingInput,
    NonUnivariateInput,
    U,
    V,
    X,
    Y,
    antiderivative,
    coefficients_in,
    derivative,
    gcd_univariate,
    order_at_origin,
    rational_roots,
    substitute,
)

from conftest import polys, univariate


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X**2 - Y**2


def test_additive_identity():
    p = X**2 * Y + 3
    assert p + ZERO == p


def test_binomial():
    assert (Y + X) ** 2 == Y**2 + 2 * X * Y + X**2


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        X ** -1


def test_canonical_form_drops_zeros():
    p = MPoly({(1, 0, 0, 0): 0, (0, 1, 0, 0): 2})
    assert p.terms == {(0, 1, 0, 0): 2}
    assert X - X == ZERO
    assert not (X - X)


def test_integral_fractions_normalize():
    p = MPoly.const(Fraction(4, 2))
    (c,) = p.terms.values()
    assert type(c) is int and c == 2


def test_derivative_examples():
    assert derivative(X**2 * Y, "x") == 2 * X * Y
    assert derivative(Y**3 + X, "y") == 3 * Y**2
    assert derivative(MPoly.const(7), "x") == ZERO
    assert derivative(X**4, "x", 3) == 24 * X


def test_antiderivative_examples():
    assert antiderivative(2 * X, "x") == X**2
    assert antiderivative(ZERO, "x") == ZERO
    assert antiderivative(X**2, "x") == X**3 / 3
    assert (X**3 / 3).terms == {(3, 0, 0, 0): Fraction(1, 3)}


def test_antiderivative_rejects_other_variables():
    with pytest.raises(NonUnivariateInput):
        antiderivative(X * Y, "x")


def test_substitute_examples():
    assert substitute(Y**2 + 2 * X * Y, "y", Y - X) == Y**2 - X**2
    assert substitute(Y**3, "y", Y) == Y**3
    p = Y**2 + 2 * X * Y + X**2 + X
    # expand (y - x)^2 + 2x(y - x) + x^2 + x by ring operations
    expected = (Y - X) * (Y - X) + 2 * X * (Y - X) + X * X + X
    assert substitute(p, "y", Y - X) == expected == Y**2 + X


def test_coefficients_in_examples():
    assert coefficients_in(Y**2 + 2 * X * Y + X**2 + X, "y") == [X**2 + X, 2 * X, ONE]
    assert coefficients_in(2 * U - 4 * X, "x") == [2 * U, MPoly.const(-4)]
    assert coefficients_in(ZERO, "y") == [ZERO]


def test_order_at_origin_examples():
    assert order_at_origin(MPoly.const(3)) == 0
    assert order_at_origin(2 * U) == 1
    assert order_at_origin(U * V**2 + U**3) == 3
    assert order_at_origin(ZERO) == math.inf


def test_order_at_origin_rejects_x():
    with pytest.raises(NonConformingInput):
        order_at_origin(U + X)


def test_gcd_examples():
    assert gcd_univariate(X**2 - 1, X - 1) == X - 1
    assert gcd_univariate(-V, ONE) == ONE
    assert gcd_univariate(4 * V, 2 * V**2) == V
    assert gcd_univariate(ZERO, ZERO) == ZERO
    assert gcd_univariate(MPoly.const(3), MPoly.const(5)) == ONE


def test_gcd_rejects_mixed_variables():
    with pytest.raises(NonUnivariateInput):
        gcd_univariate(X, Y)
    with pytest.raises(NonUnivariateInput):
        gcd_univariate(X * Y, X, "x")


def test_rational_roots():
    p = (2 * X - 1) * (X + 3) * (X**2 + 1)
    assert rational_roots(p, "x") == [Fraction(-3), Fraction(1, 2)]
    assert rational_roots(V**2, "v") == [Fraction(0)]


def test_exquo_round_trip():
    a = X**2 + 3 * X * U - V
    b = Y - 2 * U + 1
    assert (a * b).exquo(b) == a


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == ZERO


@given(univariate("x", 6))
def test_derivative_inverts_antiderivative(p):
    assert derivative(antiderivative(p, "x"), "x") == p
    assert antiderivative(p, "x").constant_term() == 0


@given(polys(), polys(), st.sampled_from("xyuv"))
def test_leibniz(p, q, var):
    assert derivative(p * q, var) == derivative(p, var) * q + p * derivative(q, var)


@given(polys(max_terms=4), polys(max_terms=4), polys(nvars=2, max_exp=2, max_terms=3))
def test_substitute_is_homomorphism(p, q, s):
    assert substitute(p * q, "y", s) == substitute(p, "y", s) * substitute(q, "y", s)
    assert substitute(p + q, "y", s) == substitute(p, "y", s) + substitute(q, "y", s)


@st.composite
def uv_polys(draw):
    return MPoly(draw(st.dictionaries(st.tuples(st.just(0), st.just(0), st.integers(0, 3), st.integers(0, 3)),
                                      st.integers(-4, 4), max_size=4)))


@given(uv_polys(), uv_polys())
def test_order_is_additive(p, q):
    if p and q:
        assert order_at_origin(p * q) == order_at_origin(p) + order_at_origin(q)


@given(polys())
def test_coefficients_reassemble(p):
    cs = coefficients_in(p, "y")
    total = ZERO
    for k, c in enumerate(cs):
        total = total + c * Y**k
    assert total == p
    assert p.is_zero() or cs[-1]


@given(univariate("v", 4), univariate("v", 4), univariate("v", 3))
def test_gcd_divides_and_is_maximal(a, b, c):
    g = gcd_univariate(a * c, b * c, "v")
    if not (a * c or b * c):
        assert g == ZERO
        return
    assert g.coefficients_in("v")[-1] == ONE
    for h in (a * c, b * c):
        if h:
            h.exquo(g)
    if c:
        # every common factor divides the gcd
        g.exquo(c.scale(Fraction(1) / Fraction(c.coefficients_in("v")[-1].constant_value())))
