"""Exact integer/rational helpers.

Python ints and :class:`fractions.Fraction` are the big-number types; this
module adds the binomial convention used throughout and certified bounds on
``exp(x)`` so that no verification path touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "binom",
    "exp_bounds",
    "int_to_str",
    "int_from_str",
    "rat_to_str",
    "rat_from_str",
]


def binom(a: int, b: int) -> int:
    """C(a, b) with C(0, 0) = 1 and C(a, b) = 0 when b < 0 or b > a."""
    if a < 0:
        raise ValueError(f"binom: a must be nonnegative, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def exp_bounds(x, terms: int) -> tuple[Fraction, Fraction]:
    """Rational interval ``(lo, hi)`` containing ``e**x`` for ``|x| <= 1``.

    Uses the Taylor polynomial of degree ``terms - 1`` and the Lagrange
    remainder bound ``3 |x|^terms / terms!``. Larger ``terms`` never widens
    the interval.
    """
    x = Fraction(x)
    if abs(x) > 1:
        raise ValueError(f"exp_bounds requires |x| <= 1, got {x}")
    if terms < 2:
        raise ValueError(f"exp_bounds requires terms >= 2, got {terms}")
    total = Fraction(0)
    term = Fraction(1)
    for k in range(terms):
        total += term
        term = term * x / (k + 1)
    # term is now x^terms / terms!
    rem = 3 * abs(term)
    return total - rem, total + rem


def int_to_str(n: int) -> str:
    return str(int(n))


def int_from_str(s) -> int:
    if isinstance(s, bool):
        raise ValueError("booleans are not integers here")
    if isinstance(s, int):
        return s
    s = str(s).strip()
    if not s or not s.lstrip("+-").isdigit():
        raise ValueError(f"not a decimal integer: {s!r}")
    return int(s)


def rat_to_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = str(s).strip()
    num, sep, den = s.partition("/")
    if sep:
        d = int_from_str(den)
        if d == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int_from_str(num), d)
    return Fraction(int_from_str(num))
