"""Parsing and canonical printing of exact rationals.

Everything numeric that must be verified with zero tolerance is a
`fractions.Fraction`: arbitrary precision, always in lowest terms, positive
denominator.  The helpers here fix the wire format: a rational is written
as the string "p/q" in lowest terms (q printed even when it is 1), and read
back from "p/q" strings, integers, or integer strings.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError


def parse_rational(value, field: str = "value") -> Fraction:
    """Read a rational from an int, an integer string, or a "p/q" string."""
    if isinstance(value, bool):
        raise SchemaError(field, f"expected a rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(field, f"cannot parse rational from {value!r}") from exc
    raise SchemaError(field, f"expected int or 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Canonical "p/q" form, denominator always printed."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"
