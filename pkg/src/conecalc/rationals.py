"""Exact rational parsing and canonical formatting.

Rationals cross the JSON boundary as strings "p/q" with q > 0 and
gcd(p, q) = 1, or a bare "p" when the value is an integer. Plain ints are
accepted on input for convenience; floats never are.
"""

from fractions import Fraction

from .errors import InputError


def parse_rational(value):
    if isinstance(value, bool):
        raise InputError(f"malformed rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        # the wire format is p/q; reject decimal or scientific notation even
        # though Fraction would happily parse it
        if "." in text or "e" in text.lower():
            raise InputError(f"malformed rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"malformed rational: {value!r}") from None
    raise InputError(f"malformed rational: {value!r}")


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
