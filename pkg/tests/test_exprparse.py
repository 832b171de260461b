"""Expression parser: grammar, errors with positions, round-trips."""

from fractions import Fraction

import pytest

from orbitprimes import polys
from orbitprimes.errors import ExprSyntaxError
from orbitprimes.exprparse import parse_polynomial, parse_rational_function


def rf(text):
    num, den = parse_rational_function(text)
    g = polys.gcd(num, den)
    num = polys.exact_div(num, g)
    den = polys.exact_div(den, g)
    lc = den[-1]
    return [c / lc for c in num], [c / lc for c in den]


def test_basic_polynomials():
    num, den = rf("x^2+1")
    assert num == [1, 0, 1]
    assert den == [1]
    num, den = rf("1/x^2")
    assert num == [1]
    assert den == [0, 0, 1]
    num, den = rf("x^2 + 1/2")
    assert num == [Fraction(1, 2), 0, 1]


def test_precedence_and_unary():
    num, den = rf("-x^2")
    assert num == [0, 0, -1]
    num, den = rf("2*x + 3*x")
    assert num == [0, 5]
    num, den = rf("(x+1)^3")
    assert num == [1, 3, 3, 1]
    num, den = rf("x^-2")
    assert (num, den) == ([1], [0, 0, 1])


def test_juxtaposition():
    assert rf("3x^2") == rf("3*x^2")
    assert rf("2(x+1)") == rf("2*(x+1)")
    assert rf("x(x+1)") == rf("x*(x+1)")


def test_rational_literals_via_division():
    num, den = rf("1/2 + 1/3")
    assert num == [Fraction(5, 6)]
    assert den == [1]


def test_unreduced_common_factor_preserved():
    num, den = parse_rational_function("(x^2-1)/(x-1)")
    assert polys.degree(polys.gcd(num, den)) == 1


def test_syntax_errors_report_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse_rational_function("x^2 + ")
    assert info.value.position == len("x^2 + ")
    with pytest.raises(ExprSyntaxError):
        parse_rational_function("x^y")
    with pytest.raises(ExprSyntaxError):
        parse_rational_function("x + $")
    with pytest.raises(ExprSyntaxError):
        parse_rational_function("y^2")
    with pytest.raises(ExprSyntaxError):
        parse_rational_function("(x+1")
    with pytest.raises(ExprSyntaxError):
        parse_rational_function("1/(x-x)")


def test_parse_polynomial_rejects_proper_fractions():
    assert parse_polynomial("t^2+2t", var="t") == [0, 2, 1]
    with pytest.raises(ExprSyntaxError):
        parse_polynomial("1/t", var="t")
    # cancellation down to a polynomial is fine
    assert parse_polynomial("(t^2-1)/(t-1)", var="t") == [1, 1]


def test_rendering_round_trip():
    for text in ("x^2 + 1", "(3*x^3 - 2*x + 5)", "x^4 - x", "7", "x^2 - 1/2"):
        num, den = parse_rational_function(text)
        rendered = polys.to_string(num)
        num2, den2 = parse_rational_function(rendered)
        g = polys.gcd(num, den)
        g2 = polys.gcd(num2, den2)
        assert polys.exact_div(num, g) == polys.exact_div(num2, g2)
