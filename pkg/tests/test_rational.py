from fractions import Fraction

import pytest

from lipfree.rational import common_scale, fmt, parse_rational


@pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), ("0/1", 0), (" 7/3 ", Fraction(7, 3))])
def test_parse_accepts(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "a/b", "", "1//2", 0.5])
def test_parse_rejects(text):
    with pytest.raises((ValueError, TypeError)):
        parse_rational(text)


def test_fmt_round_trip():
    for q in (Fraction(0), Fraction(5), Fraction(-7, 3)):
        assert parse_rational(fmt(q)) == q
    assert fmt(Fraction(4, 2)) == "2"
    assert fmt(Fraction(-1, 2)) == "-1/2"


def test_common_scale():
    assert common_scale([Fraction(1, 2), Fraction(1, 3), 4]) == 6
