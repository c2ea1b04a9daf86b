"""Exact rational scalars.

All certified quantities are :class:`fractions.Fraction` values.  Floats only
appear in reporting and in the non-certified oracle.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_INT = r"[+-]?\d+"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<num>{_INT})\s*/\s*(?P<den>\d+)|(?P<dec>[+-]?(?:\d+\.?\d*|\.\d+)))\s*$"
)


class ScalarSyntaxError(ValueError):
    """Raised for text that is not an integer, fraction or finite decimal."""


def parse_scalar(text) -> Fraction:
    """Parse ``"3"``, ``"5/16"`` or ``"0.125"`` into an exact rational.

    Fractions and ints are passed through unchanged so that JSON documents may
    carry plain integers as well as strings.  Floats are refused: a binary64
    literal is not what the user wrote.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ScalarSyntaxError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ScalarSyntaxError(f"scalar must be given as a string, got {type(text).__name__}")
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ScalarSyntaxError(f"malformed scalar literal: {text!r}")
    if m.group("dec") is not None:
        return Fraction(m.group("dec"))
    den = int(m.group("den"))
    if den == 0:
        raise ScalarSyntaxError(f"zero denominator in {text!r}")
    return Fraction(int(m.group("num")), den)


def to_float(x: Fraction) -> float:
    """Nearest binary64; saturates to +-inf when the magnitude overflows."""
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def to_string(x: Fraction) -> str:
    """Exact ``"p/q"`` (or ``"p"``) form used in JSON reports."""
    return str(x)


def to_decimal_string(x: Fraction) -> str | None:
    """Exact finite decimal expansion, or None when the denominator has
    prime factors other than 2 and 5."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    digits = max(twos, fives)
    scaled = abs(x.numerator) * 10**digits // x.denominator
    sign = "-" if x < 0 else ""
    if digits == 0:
        return f"{sign}{scaled}"
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def format_approx(x: Fraction, digits: int = 12) -> str:
    """Decimal approximation with ``digits`` significant digits, for tables."""
    return f"{to_float(x):.{digits}g}"
