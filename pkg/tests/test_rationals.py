# tests/test_rationals.py
from __future__ import annotations
from fractions import Fraction

import pytest

from gameforge.games.rationals import as_rational, format_rational, parse_rational


@pytest.mark.parametrize("literal, value", [
    ("3", Fraction(3)),
    ("-7", Fraction(-7)),
    ("22/4", Fraction(11, 2)),
    ("-1/3", Fraction(-1, 3)),
    ("2.2", Fraction(11, 5)),
    ("0", Fraction(0)),
])
def test_parse_rational_is_exact(literal, value):
    assert parse_rational(literal) == value


@pytest.mark.parametrize("literal", [
    " 1", "1 ", "\t2/3", "2/3\n", "1/0", "1/-2", "+1", "1e3", "", "a", "1//2", "0x10",
])
def test_parse_rational_rejects_malformed(literal):
    assert parse_rational(literal) is None


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(22, 4)) == "11/2"
    assert format_rational(Fraction(-6, 3)) == "-2"


def test_as_rational_accepts_exact_values():
    assert as_rational(4) == Fraction(4)
    assert as_rational("1/2") == Fraction(1, 2)
    half = Fraction(1, 2)
    assert as_rational(half) is half


@pytest.mark.parametrize("value", [True, False, 0.5, None])
def test_as_rational_rejects_inexact_values(value):
    with pytest.raises(TypeError):
        as_rational(value)


def test_as_rational_rejects_padded_literal():
    with pytest.raises(ValueError, match="malformed"):
        as_rational(" 1")
