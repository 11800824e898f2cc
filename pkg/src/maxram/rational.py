"""Exact rational helpers: parsing, formatting, and certified logarithm floors.

Rationals cross file boundaries as strings ("p/q", or "p" for integers).
Floors of expressions r * ln(d) are certified with rational bounds on the
logarithm; a float floor cannot be trusted near an integer boundary.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


def parse_rational(value) -> Fraction:
    """Parse an int, or a string "p" / "p/q", into a Fraction."""
    if isinstance(value, bool):
        raise ParseError(f"expected rational, got bool {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        parts = value.split("/")
        try:
            if len(parts) == 1:
                return Fraction(int(parts[0]))
            if len(parts) == 2:
                return Fraction(int(parts[0]), int(parts[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}: {exc}") from exc
    raise ParseError(f"expected rational, got {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def log_bounds(d: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Rational (lo, hi) with lo <= ln(d) <= hi and hi - lo < eps.

    Uses ln(d) = 2*atanh(x) with x = (d-1)/(d+1); partial sums of the
    series are lower bounds and the geometric tail bounds the remainder.
    """
    if d < 1:
        raise ValueError("log_bounds needs d >= 1")
    if d == 1:
        return Fraction(0), Fraction(0)
    x = Fraction(d - 1, d + 1)
    x2 = x * x
    term = x
    total = Fraction(0)
    j = 0
    while True:
        total += term / (2 * j + 1)
        # tail: 2 * sum_{i>j} x^(2i+1)/(2i+1) < 2 * x^(2j+3) / ((2j+3)(1-x^2))
        tail = 2 * term * x2 / ((2 * j + 3) * (1 - x2))
        if tail < eps:
            lo = 2 * total
            return lo, lo + tail
        term *= x2
        j += 1


def floor_times_log(r: Fraction, d: int) -> int:
    """Certified floor(r * ln(d)) for rational r >= 0 and integer d >= 1.

    Tightens the log interval until both endpoints floor to the same
    integer. Terminates because r * ln(d) is irrational for r != 0, d >= 2.
    """
    r = Fraction(r)
    if r < 0:
        raise ValueError("floor_times_log needs r >= 0")
    if d == 1 or r == 0:
        return 0
    eps = Fraction(1, 10**12)
    while True:
        lo, hi = log_bounds(d, eps)
        flo = (r * lo).numerator // (r * lo).denominator
        fhi = (r * hi).numerator // (r * hi).denominator
        if flo == fhi:
            return flo
        eps /= 2**10


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)
