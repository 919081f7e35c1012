"""Strict parsing and formatting of exact rationals."""

import re
from fractions import Fraction
from math import lcm

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


def parse_rational(value) -> Fraction:
    """Parse ``"a/b"``, an integer string, an int or a Fraction.

    Floats and decimal strings are rejected: every value in this library
    is exact.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r}")
    m = _RATIONAL.fullmatch(value)
    if m is None:
        raise ValueError(f"not a rational: {value!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(num, den)


def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def common_scale(values) -> int:
    """Least common multiple of the denominators."""
    m = 1
    for v in values:
        m = lcm(m, Fraction(v).denominator)
    return m
