from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from rzpencil.errors import DomainError, ParseError, PreconditionError
from rzpencil.numbers import I, Num, conj, format_number, simplify, sqrt_of
from rzpencil.polynomial import (
    Poly,
    derivative,
    divide_exact,
    evaluate,
    format_poly,
    homogenize,
    multiply,
    parse,
    power,
    restrict,
    shifted_homogenize,
)

SYMS = sp.symbols("x1:4")

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, nvars=3, max_terms=5, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[e] = draw(fractions)
    return Poly(nvars, terms)


def to_sympy(p: Poly):
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        mono = sp.Integer(1)
        for s, k in zip(SYMS, e):
            mono *= s**k
        expr += sp.Rational(c.numerator, c.denominator) * mono
    return sp.expand(expr)


# -- scalars -------------------------------------------------------------------------


def test_radical_arithmetic():
    r2 = sqrt_of(2)
    assert r2 * r2 == 2
    assert I * I == -1
    assert 1 / (1 + r2) == r2 - 1
    assert conj(3 + 2 * I) == 3 - 2 * I
    assert simplify(Num(Fraction(1, 2), 0, 0, 0, 1)) == Fraction(1, 2)


def test_mixed_radicals_rejected():
    with pytest.raises(DomainError):
        sqrt_of(2) * sqrt_of(3)
    with pytest.raises(DomainError):
        sqrt_of(8)


def test_number_text():
    assert format_number(Fraction(-3, 4)) == "-3/4"
    assert format_number(Fraction(1, 2) + 3 * sqrt_of(2)) == "1/2+3*sqrt(2)"
    assert format_number(-2 * I) == "-2*i"


# -- parsing and printing ----------------------------------------------------------------


def test_parse_examples():
    p = parse("(x1+sqrt(2))^2 - x2^2 - 1")
    assert format_poly(p) == "1 + 2*sqrt(2)*x1 + x1^2 - x2^2"
    assert parse("x^2 + y*z") == parse("x1^2 + x2*x3")
    assert parse("0.5*x1 + 1/3") == parse("1/3 + 1/2*x1")
    assert parse("2**3*x1") == parse("8*x1")
    assert parse("x0^2 - x1^2").base == 0


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse("1 + * x1")
    assert exc.value.position == 4
    with pytest.raises(ParseError):
        parse("1 + i*x1")
    with pytest.raises(ParseError):
        parse("x1 + x4", nvars=2)


@given(polys())
def test_format_parse_round_trip(p):
    assert parse(format_poly(p), nvars=p.nvars, base=1) == p


@given(polys(), polys())
def test_multiply_matches_sympy(p, q):
    assert to_sympy(multiply(p, q)) == sp.expand(to_sympy(p) * to_sympy(q))


@given(polys(max_terms=3, max_deg=2), st.integers(0, 3))
def test_power_matches_sympy(p, r):
    assert to_sympy(power(p, r)) == sp.expand(to_sympy(p) ** r)


@given(polys(), polys(), st.lists(fractions, min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(p, q, a):
    assert evaluate(p * q, a) == evaluate(p, a) * evaluate(q, a)
    assert evaluate(p + q, a) == evaluate(p, a) + evaluate(q, a)


@given(polys(), st.integers(0, 2))
def test_derivative_matches_sympy(p, i):
    assert to_sympy(derivative(p, i)) == sp.expand(sp.diff(to_sympy(p), SYMS[i]))


@given(polys(max_terms=3), polys(max_terms=3), fractions.filter(bool))
def test_exact_division_inverts_multiplication(p, q, c):
    # the divisor needs a nonzero constant term
    q = q + (c - q.const_term)
    assert divide_exact(p * q, q) == p


def test_division_needs_constant_term():
    with pytest.raises(PreconditionError):
        divide_exact(parse("x1^2"), parse("x1"))


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        divide_exact(parse("1 - x1^2"), parse("1 - x1^3"))


@given(polys(), st.lists(fractions, min_size=3, max_size=3), fractions)
def test_restriction_agrees_with_evaluation(p, a, t):
    u = restrict(p, a)
    assert u(t) == evaluate(p, [t * v for v in a])


@given(polys().filter(lambda p: not p.is_zero), st.lists(fractions, min_size=3, max_size=3))
def test_homogenization(p, a):
    h = homogenize(p)
    assert h.is_homogeneous
    assert h.nvars == p.nvars + 1 and h.base == 0
    assert evaluate(h, [Fraction(1)] + a) == evaluate(p, a)


def test_shifted_homogenization_of_ball():
    p = parse("1 - x1^2 - x2^2 - x3^2")
    assert shifted_homogenize(p) == parse("(x0+1)^2 - x1^2 - x2^2 - x3^2")


@given(polys(), st.lists(fractions, min_size=3, max_size=3), fractions.filter(lambda s: s != -1))
def test_shifted_homogenization_scaling(p, a, s):
    # ptilde(s, a) = (s + 1)^d p(a / (s + 1)), for p(0) = 1 and deg p >= 1
    p = p + (1 - p.const_term)
    assume(p.degree >= 1)
    d = p.degree
    lhs = evaluate(shifted_homogenize(p), [s] + a)
    rhs = (s + 1) ** d * evaluate(p, [v / (s + 1) for v in a])
    assert lhs == rhs


def test_homogenization_preconditions():
    with pytest.raises(PreconditionError):
        homogenize(Poly(2, {}))
    with pytest.raises(PreconditionError):
        shifted_homogenize(parse("2 - x1^2"))
