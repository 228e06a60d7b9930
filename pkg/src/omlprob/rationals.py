"""Exact rational parsing and printing.

All probabilities in this package are ``fractions.Fraction`` values; nothing
is ever stored as a float.  Decimal literals in input files are read exactly
as fractions over powers of ten ("0.4" -> 2/5).
"""

from fractions import Fraction

from .errors import ParseError


def parse_rational(value) -> Fraction:
    """Parse an int, Fraction, "p/q" string or decimal string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        # Floats only appear if a JSON loader was not configured with
        # parse_float=Fraction; refuse rather than guess the intended decimal.
        raise ParseError(f"refusing inexact float literal: {value!r}")
    raise ParseError(f"not a rational: {value!r}")


def has_finite_decimal(q: Fraction) -> bool:
    """True iff q has a terminating decimal expansion (denominator 2^a·5^b)."""
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def format_rational(q: Fraction, decimal: bool = False, approx: bool = False) -> str:
    """Render q as "p/q" (default) or in decimal.

    Decimal output is exact when the denominator is of the form 2^a·5^b;
    otherwise it is refused unless ``approx`` allows a float approximation.
    """
    if not decimal:
        return str(q)
    if has_finite_decimal(q):
        sign = "-" if q < 0 else ""
        q = abs(q)
        d = q.denominator
        e2 = e5 = 0
        while d % 2 == 0:
            d //= 2
            e2 += 1
        while d % 5 == 0:
            d //= 5
            e5 += 1
        k = max(e2, e5)
        scaled = q.numerator * 10**k // q.denominator
        if k == 0:
            return f"{sign}{scaled}"
        text = str(scaled).rjust(k + 1, "0")
        return f"{sign}{text[:-k]}.{text[-k:]}"
    if approx:
        return repr(float(q))
    raise ValueError(f"{q} has no exact decimal form (use p/q or allow approximation)")
