# gameforge/games/rationals.py
from __future__ import annotations
from fractions import Fraction
from typing import Iterable, List, Optional

from .patterns import DECIMAL_RE, RATIONAL_RE

Rational = Fraction


def parse_rational(s: str) -> Optional[Fraction]:
    """Exact value of a rational literal, None when the literal is malformed."""
    if not isinstance(s, str):
        return None
    # surrounding whitespace is malformed
    if RATIONAL_RE.fullmatch(s) or DECIMAL_RE.fullmatch(s):
        return Fraction(s)
    return None


def format_rational(x: Fraction) -> str:
    # lowest terms, never a decimal: 11/5 stays "11/5"
    return str(Fraction(x))


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        v = parse_rational(x)
        if v is None:
            raise ValueError(f"malformed rational literal {x!r}")
        return v
    if isinstance(x, bool):
        raise TypeError("expected an exact rational, got bool")
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def as_rationals(xs: Iterable) -> List[Fraction]:
    return [as_rational(x) for x in xs]
