"""Rational parsing and formatting, and certified logarithm floors."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxram import ParseError, ceil_div, format_rational, parse_rational
from maxram.rational import floor_times_log, log_bounds

F = Fraction


def test_parse_rational_accepts_ints_and_strings():
    assert parse_rational(7) == 7
    assert parse_rational("-3") == -3
    assert parse_rational("3/2") == F(3, 2)
    assert parse_rational("-10/4") == F(-5, 2)


@pytest.mark.parametrize("bad", [True, 1.5, None, "a/b", "1/0", "1/2/3", ""])
def test_parse_rational_rejects_everything_else(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


def test_format_rational_matches_the_wire_format():
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-3, 2)) == "-3/2"
    assert format_rational(F(0)) == "0"


@given(st.fractions(max_denominator=10**6))
def test_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_ceil_div():
    assert ceil_div(9, 4) == 3
    assert ceil_div(8, 4) == 2
    assert ceil_div(1, 5) == 1
    assert ceil_div(-3, 2) == -1


@pytest.mark.parametrize("d", [1, 2, 3, 10, 126])
def test_log_bounds_bracket_the_float_log(d):
    eps = F(1, 10**9)
    lo, hi = log_bounds(d, eps)
    assert hi - lo < eps
    assert float(lo) <= math.log(d) + 1e-12
    assert math.log(d) - 1e-12 <= float(hi)


def test_log_bounds_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_bounds(0, F(1, 10))


def test_floor_times_log_fixtures():
    assert floor_times_log(F(1), 2) == 0
    assert floor_times_log(F(3), 2) == 2  # 3 ln 2 = 2.079
    assert floor_times_log(F(10), 3) == 10  # 10 ln 3 = 10.986
    assert floor_times_log(F(0), 5) == 0
    assert floor_times_log(F(7), 1) == 0
    with pytest.raises(ValueError):
        floor_times_log(F(-1), 2)


@given(
    st.fractions(min_value=0, max_value=50, max_denominator=16),
    st.integers(1, 50),
)
def test_floor_times_log_agrees_with_floats_away_from_boundaries(r, d):
    """Floats are only trustworthy when clearly inside an integer gap, so
    compare there and merely sandwich otherwise."""
    exact = floor_times_log(r, d)
    approx = float(r) * math.log(d)
    assert exact <= approx + 1e-9
    assert approx - 1e-9 <= exact + 1
    if min(approx - math.floor(approx), math.ceil(approx) - approx) > 1e-6:
        assert exact == math.floor(approx)
