"""Exact Laurent-polynomial and rational-function arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterflow.algebra import (
    DivisionFails,
    LaurentPoly,
    RatFunc,
    exact_div_laurent,
    format_fraction,
    mono,
    mono_mul,
    parse_fraction,
    poly_gcd,
    try_exact_div,
)


def x(i, e=1):
    return LaurentPoly.variable(i, e)


def c(v):
    return LaurentPoly.constant(Fraction(v))


small_poly = st.lists(
    st.tuples(
        st.integers(-5, 5),  # coefficient
        st.lists(st.tuples(st.integers(0, 3), st.integers(-2, 3)), max_size=3),
    ),
    min_size=0,
    max_size=5,
).map(
    lambda terms: sum(
        (LaurentPoly.monomial(mono(dict(m)), co) for co, m in terms),
        LaurentPoly.zero(),
    )
)


class TestLaurentPoly:
    def test_constant_arithmetic(self):
        assert c(2) + c(3) == c(5)
        assert c(2) * c(3) == c(6)
        assert (c(2) - c(2)).is_zero()

    def test_negative_exponents(self):
        p = x(0, -1) * x(1, 2)
        assert p * x(0) == x(1, 2)

    def test_min_exponents(self):
        p = x(0, -2) + x(0, 3) * x(1, -1)
        lows = dict(p.min_exponents())
        assert lows.get(0, 0) == -2
        assert lows.get(1, 0) == -1

    def test_min_exponents_missing_var_clamps_to_zero(self):
        # each variable is absent from one term, so its floor is 0
        p = x(0, 2) + x(1, 3)
        lows = dict(p.min_exponents())
        assert lows.get(0, 0) == 0 and lows.get(1, 0) == 0

    def test_mono_mul_merges_sorted(self):
        a = mono({0: 1, 2: -1})
        b = mono({1: 2, 2: 1})
        assert dict(mono_mul(a, b)) == {0: 1, 1: 2}

    @given(small_poly, small_poly)
    @settings(max_examples=80, deadline=None)
    def test_division_roundtrip(self, p, q):
        if q.is_zero():
            return
        prod = p * q
        got = exact_div_laurent(prod, q)
        assert got == p

    @given(small_poly, small_poly)
    @settings(max_examples=60, deadline=None)
    def test_try_exact_div_consistent(self, p, q):
        if q.is_zero():
            return
        r = try_exact_div(p, q)
        if r is not None:
            assert r * q == p

    def test_division_fails_on_non_multiple(self):
        with pytest.raises(DivisionFails):
            exact_div_laurent(x(0) + c(1), x(1) + c(1))

    def test_gcd_divides_both(self):
        g = x(0) + x(1)
        a = g * (x(0) + c(1))
        b = g * (x(1) + c(2))
        d = poly_gcd(a, b)
        assert try_exact_div(a, d) is not None
        assert try_exact_div(b, d) is not None
        assert try_exact_div(d, g) is not None

    def test_gcd_handles_fractional_coefficients(self):
        g = x(0) + x(1)
        a = g.scale(Fraction(3, 7)) * (x(0) + c(Fraction(1, 2)))
        b = g.scale(Fraction(-2, 5)) * (x(1) + c(2))
        d = poly_gcd(a, b)
        assert try_exact_div(d, g) is not None


class TestRatFunc:
    def test_cancellation(self):
        p = RatFunc.from_poly(x(0) ** 2 - c(1))
        q = RatFunc.from_poly(x(0) + c(1))
        r = p / q
        assert r.den.is_one()
        assert r.num == x(0) - c(1)

    def test_field_axioms_spot(self):
        a = RatFunc.from_poly(x(0) + c(1)) / RatFunc.from_poly(x(1))
        b = RatFunc.from_poly(x(1) - c(2)) / RatFunc.from_poly(x(0))
        assert (a + b) - b == a
        assert (a * b) / b == a

    @given(small_poly, small_poly)
    @settings(max_examples=40, deadline=None)
    def test_mul_div_inverse(self, p, q):
        if p.is_zero() or q.is_zero():
            return
        a = RatFunc.from_poly(p) / RatFunc.from_poly(q)
        assert a * a.inverse() == RatFunc.one()


class TestFractions:
    def test_parse_format_roundtrip(self):
        for s in ("3", "-5/7", "0", "22/7"):
            assert format_fraction(parse_fraction(s)) == s

    def test_parse_rejects_float(self):
        with pytest.raises(ValueError):
            parse_fraction("1.5")


def test_term_limit_env(monkeypatch):
    monkeypatch.setenv("CLUSTERFLOW_MAX_TERMS", "5")
    from clusterflow.algebra import TermLimitExceeded

    p = sum((x(i) for i in range(4)), LaurentPoly.zero())
    with pytest.raises(TermLimitExceeded):
        _ = p * p * p
