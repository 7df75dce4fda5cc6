"""Exact rational coefficients.

``Rational`` is gmpy2's ``mpq``: always reduced, denominator positive, and
roughly an order of magnitude faster than :class:`fractions.Fraction` for
the mixed small/huge operands that show up in series arithmetic.
"""
from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq as Rational

__all__ = ["Rational", "as_rational", "rational_sqrt", "to_fraction"]

ZERO = Rational(0)
ONE = Rational(1)


def as_rational(value) -> Rational:
    if isinstance(value, type(ONE)):
        return value
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, (int, type(gmpy2.mpz(0)))):
        return Rational(value)
    if isinstance(value, str):
        return Rational(Fraction(value).numerator, Fraction(value).denominator)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def rational_sqrt(value) -> Rational:
    """Exact square root of a nonnegative rational square, else ValueError."""
    value = as_rational(value)
    if value < 0:
        raise ValueError(f"{value} has no real square root")
    num, den = value.numerator, value.denominator
    rn, en = gmpy2.iroot(num, 2)
    rd, ed = gmpy2.iroot(den, 2)
    if not (en and ed):
        raise ValueError(f"{value} is not the square of a rational")
    return Rational(rn, rd)


def to_fraction(value) -> Fraction:
    value = as_rational(value)
    return Fraction(int(value.numerator), int(value.denominator))
