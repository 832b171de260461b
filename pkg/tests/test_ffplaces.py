"""Function-field places: valuations, heights two ways, Mason inequality."""

import random
from fractions import Fraction

import pytest

from orbitprimes import polys
from orbitprimes.exprparse import parse_polynomial
from orbitprimes.ffplaces import (
    FFElement,
    FFPlace,
    ff_height,
    ff_valuation,
    mason_check,
    squarefree_part,
)

# small pool of polynomials irreducible over Q, used to build elements with
# known place data
IRREDUCIBLES = (
    (0, 1),  # t
    (-1, 1),  # t - 1
    (1, 1),  # t + 1
    (1, 0, 1),  # t^2 + 1
    (-2, 0, 1),  # t^2 - 2
    (1, 1, 1),  # t^2 + t + 1
    (-2, 0, 0, 1),  # t^3 - 2
)


def build_element(rng, max_factors=4, max_exp=3):
    num = [Fraction(rng.randint(1, 5))]
    den = [Fraction(1)]
    exponents = {}
    for _ in range(rng.randint(0, max_factors)):
        pi = rng.choice(IRREDUCIBLES)
        e = rng.randint(-max_exp, max_exp)
        exponents[pi] = exponents.get(pi, 0) + e
    for pi, e in exponents.items():
        p = [Fraction(c) for c in pi]
        for _ in range(abs(e)):
            if e > 0:
                num = polys.mul(num, p)
            else:
                den = polys.mul(den, p)
    return FFElement(num, den), exponents


def test_ff_valuation_examples():
    f = FFElement.parse("t^2(t-1)")
    assert ff_valuation(f, FFPlace.finite([0, 1])) == 2
    assert ff_valuation(FFElement.parse("1/t"), FFPlace.infinite()) == 1
    assert ff_valuation(FFElement.parse("(t^2+1)/t^3"), FFPlace.infinite()) == 1
    with pytest.raises(ValueError):
        ff_valuation(FFElement.from_const(0), FFPlace.infinite())


def test_ff_valuation_matches_construction():
    rng = random.Random(3)
    for _ in range(200):
        f, exponents = build_element(rng)
        if f.is_zero:
            continue
        for pi, e in exponents.items():
            place = FFPlace.finite(list(pi))
            assert ff_valuation(f, place) == e


def test_squarefree_part_examples():
    assert squarefree_part([0, 0, 1, 1]) == [0, 1, 1]  # t^2(t+1) -> t(t+1)
    assert squarefree_part([1, 0, 1]) == [1, 0, 1]
    assert squarefree_part(polys.mul([-1, 1], polys.mul([-1, 1], polys.mul([-1, 1], [-1, 1])))) == [-1, 1]
    with pytest.raises(ValueError):
        squarefree_part([])


def test_ff_height_examples():
    assert ff_height(FFElement.parse("t^3+1")) == 3
    assert ff_height(FFElement.from_const(5)) == 0
    assert ff_height(FFElement.parse("(t^2+1)/t^5")) == 5


def test_ff_height_two_ways_and_product_formula():
    # degree formula vs the place sum over the known support plus infinity,
    # and the product formula (all valuations weighted by degree sum to 0)
    rng = random.Random(4)
    for _ in range(1000):
        f, exponents = build_element(rng)
        if f.is_zero or f.is_constant:
            continue
        places = [FFPlace.finite(list(pi)) for pi in exponents]
        inf = FFPlace.infinite()
        place_sum = -sum(
            min(ff_valuation(f, place), 0) * place.degree for place in places
        )
        place_sum -= min(ff_valuation(f, inf), 0) * inf.degree
        assert place_sum == ff_height(f)
        total = sum(ff_valuation(f, place) * place.degree for place in places)
        total += ff_valuation(f, inf) * inf.degree
        assert total == 0


def test_mason_examples():
    a = parse_polynomial("t^2+2t", var="t")
    r = mason_check(a, [Fraction(1)])
    assert (r.max_degree, r.radical_degree) == (2, 3)
    assert r.holds and r.tight

    r = mason_check([Fraction(0), Fraction(1)], [Fraction(1)])  # t + 1
    assert (r.max_degree, r.radical_degree) == (1, 2)
    assert r.tight

    r = mason_check([0, 0, 1], [1, 2])  # t^2 + (2t + 1) = (t+1)^2
    assert (r.max_degree, r.radical_degree) == (2, 3)
    assert r.holds


def test_mason_preconditions():
    with pytest.raises(ValueError):
        mason_check([0, 1], [0, 2])  # not coprime
    with pytest.raises(ValueError):
        mason_check([1, 1], [-1, -1])  # a + b = 0
    with pytest.raises(ValueError):
        mason_check([2], [3])  # all constant
    with pytest.raises(ValueError):
        mason_check([], [1])


def test_mason_random_never_violated():
    rng = random.Random(5)
    checked = 0
    while checked < 1000:
        a = [Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 13))]
        b = [Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 13))]
        a, b = polys.strip(a), polys.strip(b)
        if polys.is_zero(a) or polys.is_zero(b):
            continue
        g = polys.gcd(a, b)
        if polys.degree(g) > 0:
            a = polys.exact_div(a, g)
            b = polys.exact_div(b, g)
        c = polys.add(a, b)
        if polys.is_zero(c):
            continue
        if max(polys.degree(a), polys.degree(b), polys.degree(c)) < 1:
            continue
        report = mason_check(a, b)
        assert report.holds  # an unconditional theorem: zero tolerance
        checked += 1


def test_ffelement_field_axioms():
    rng = random.Random(6)
    for _ in range(50):
        f, _ = build_element(rng, max_factors=2, max_exp=2)
        g, _ = build_element(rng, max_factors=2, max_exp=2)
        h = f * g
        if not g.is_zero:
            assert h / g == f
        assert f + g - g == f
        assert (f + g) * 2 == f * 2 + g * 2
    t = FFElement.gen()
    assert t**3 / t == t * t
    assert (1 / t).den == (0, 1)
