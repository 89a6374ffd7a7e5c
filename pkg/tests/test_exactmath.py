from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from quinticslice.exactmath import format_rat, is_square, is_square_rat, isqrt, parse_rat, primes_below

from _oracles import bisect_isqrt

big = st.integers(min_value=0, max_value=10**80)


@given(big)
@settings(max_examples=2000)
def test_isqrt_matches_bisection(n):
    r, exact = isqrt(n)
    assert r == bisect_isqrt(n)
    assert exact == (r * r == n)


@given(st.integers(min_value=0, max_value=10**40))
def test_squares_are_detected(r):
    assert is_square(r * r)
    assert isqrt(r * r) == (r, True)


@given(big)
@settings(max_examples=2000)
def test_is_square_agrees_with_oracle(n):
    assert is_square(n) == (bisect_isqrt(n) ** 2 == n)


@given(st.integers(min_value=1, max_value=10**30))
def test_square_plus_one_is_not_square(r):
    # r^2 < r^2 + 1 < (r + 1)^2
    assert not is_square(r * r + 1)


def test_negative():
    assert not is_square(-4)
    with pytest.raises(ValueError):
        isqrt(-1)


def test_small_values():
    assert [n for n in range(50) if is_square(n)] == [0, 1, 4, 9, 16, 25, 36, 49]


@given(st.fractions())
def test_is_square_rat(q):
    assert is_square_rat(q * q)
    if q != 0:
        assert not is_square_rat(-q * q)


def test_is_square_rat_examples():
    assert is_square_rat(Fraction(4, 9))
    assert not is_square_rat(Fraction(2, 9))
    assert not is_square_rat(Fraction(4, 3))
    assert is_square_rat(0)


@given(st.fractions())
def test_rat_text_roundtrip(q):
    assert parse_rat(format_rat(q)) == q


def test_parse_rat_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rat("3/0")


@pytest.mark.parametrize("n", [0, 2, 3, 10, 200, 1000])
def test_primes_below(n):
    assert primes_below(n) == list(sp.primerange(2, n))
