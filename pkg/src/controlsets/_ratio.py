"""Exact rational parsing and formatting helpers.

Floats are rejected deliberately: every comparison in this toolkit must be
exact, and a float like 0.3 is not the rational 3/10.  Decimal strings are
converted exactly instead.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction, or numeric string to an exact Fraction."""
    if isinstance(value, bool):
        raise InputError(f"expected a rational number, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(
            f"refusing float {value!r}: pass an exact rational such as "
            f"Fraction(3, 10) or the string '0.3'"
        )
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"expected a rational number, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse '3', '-2/7', or '0.25' into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid rational {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    """Render a Fraction as 'p/q', or just 'p' when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
