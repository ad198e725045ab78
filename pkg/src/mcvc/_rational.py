from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

MAX_DECIMALS = 9


def as_rational(x) -> Fraction:
    """Coerce ints, strings ("0.25", "3/7") and Fractions to an exact Fraction.

    Floats go through their shortest repr so that 0.1 becomes 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        text = x.strip()
        if "." in text and "/" not in text:
            digits = re.split("[eE]", text.split(".", 1)[1])[0]
            if len(digits) > MAX_DECIMALS:
                raise InputError(f"more than {MAX_DECIMALS} fractional digits: {x!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {x!r}") from exc
    raise InputError(f"not a number: {x!r}")


def format_rational(x: Fraction) -> str:
    """Exact text form: a decimal when the value terminates, else p/q."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    scaled = abs(x.numerator) * 10**places // x.denominator
    sign = "-" if x < 0 else ""
    whole, frac = divmod(scaled, 10**places)
    return f"{sign}{whole}.{str(frac).rjust(places, '0').rstrip('0')}"
