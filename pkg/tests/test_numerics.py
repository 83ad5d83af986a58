from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from snzlab.numerics import (
    binom, exp_bounds, int_from_str, int_to_str, rat_from_str, rat_to_str,
)

from oracles import pascal


@pytest.mark.parametrize("a,b,expected", [
    (0, 0, 1),
    (3, 5, 0),
    (5, 2, 10),
    (4, -1, 0),
    (0, 1, 0),
])
def test_binom_conventions(a, b, expected):
    assert binom(a, b) == expected


def test_binom_rejects_negative_top():
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_binom_matches_pascal_table():
    table = pascal(200)
    for a in range(201):
        for b in range(a + 1):
            assert binom(a, b) == table[a][b]


def test_pascal_identity_and_symmetry():
    for a in range(1, 201):
        for b in range(1, a + 1):
            assert binom(a, b) == binom(a - 1, b - 1) + binom(a - 1, b)
    for a in range(201):
        for b in range(a + 1):
            assert binom(a, b) == binom(a, a - b)


def test_exp_bounds_at_zero():
    assert exp_bounds(0, 5) == (1, 1)


@pytest.mark.parametrize("x", [Fraction(1), Fraction(-1, 2), Fraction(1, 3), Fraction(-1)])
def test_exp_bounds_contain_high_precision_value(x):
    mpmath.mp.dps = 60
    ref = mpmath.exp(mpmath.mpf(x.numerator) / x.denominator)
    lo, hi = exp_bounds(x, 20)
    assert mpmath.mpf(lo.numerator) / lo.denominator <= ref
    assert ref <= mpmath.mpf(hi.numerator) / hi.denominator
    assert hi - lo < Fraction(1, 10 ** 15)


@given(st.fractions(min_value=-1, max_value=1, max_denominator=1000),
       st.integers(2, 25))
def test_exp_bounds_nest(x, n):
    lo1, hi1 = exp_bounds(x, n)
    lo2, hi2 = exp_bounds(x, n + 1)
    assert lo1 <= lo2 <= hi2 <= hi1


@pytest.mark.parametrize("x,terms", [(Fraction(3, 2), 10), (Fraction(0), 1)])
def test_exp_bounds_preconditions(x, terms):
    with pytest.raises(ValueError):
        exp_bounds(x, terms)


@given(st.integers())
def test_int_round_trip(n):
    assert int_from_str(int_to_str(n)) == n


@given(st.fractions())
def test_rat_round_trip(q):
    assert rat_from_str(rat_to_str(q)) == q


def test_rat_format():
    assert rat_to_str(Fraction(5, 9)) == "5/9"
    assert rat_to_str(Fraction(-123)) == "-123"
    with pytest.raises(ValueError):
        rat_from_str("1/0")
    with pytest.raises(ValueError):
        int_from_str("1.5")
