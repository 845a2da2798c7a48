"""Exact rational parsing and formatting."""

import re
from decimal import Decimal, localcontext
from fractions import Fraction

_RATIONAL = re.compile(r"\s*(\d+(?:\.\d+)?|\d+\s*/\s*\d+)\s*\Z")


class RationalError(ValueError):
    pass


def parse_rational(text):
    """Parse ``"0.6"``, ``"3/5"`` or an int into a :class:`Fraction`.

    Floats are refused because they are not exact.
    """
    if isinstance(text, bool):
        raise RationalError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise RationalError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise RationalError(f"zero denominator: {text!r}") from None


def parse_unit(text):
    """Like :func:`parse_rational` but the value must lie in [0, 1]."""
    value = parse_rational(text)
    if not 0 <= value <= 1:
        raise RationalError(f"value {value} outside [0, 1]")
    return value


def format_rational(value, decimals=False):
    """Lowest-terms ``n/d`` (``n`` when integral); lossy decimal if asked."""
    value = Fraction(value)
    if decimals:
        with localcontext() as ctx:
            ctx.prec = 12
            d = Decimal(value.numerator) / Decimal(value.denominator)
        out = format(d.normalize(), "f")
        return out
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
