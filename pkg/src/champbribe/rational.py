"""Exact rational arithmetic conventions.

All probabilities, thresholds, and LP data in this package are
`fractions.Fraction` values: arbitrary precision, always in lowest terms,
denominator positive.  No floating point ever enters a decision path.

JSON interchange encodes a rational as the string ``"num/den"`` (``"num"``
when the denominator is 1), which `parse_rational` reads back losslessly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InstanceError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value: str | int) -> Fraction:
    """Parse ``"num/den"``, ``"num"``, or a plain int into a Fraction."""
    if isinstance(value, bool):
        raise InstanceError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"not a rational: {value!r}") from exc
    raise InstanceError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical ``num/den`` string (lowest terms; bare ``num`` for integers)."""
    return str(Fraction(value))


def check_probability(value: Fraction, what: str = "probability") -> Fraction:
    """Validate 0 <= value <= 1 and return it."""
    if not ZERO <= value <= ONE:
        raise InstanceError(f"{what} {value} outside [0, 1]")
    return value
