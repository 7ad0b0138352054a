"""Exact rational scalars.

The ground field is the rationals.  Coefficients are :class:`gmpy2.mpq`
(arbitrary precision, always reduced, zero is 0/1); ints, Fractions and
``"p/q"`` strings are accepted wherever a scalar is expected.  ``mpq``
compares and hashes equal to the matching Fraction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq, mpz

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\Z")


def as_rational(value) -> mpq:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact rational.

    Floats are rejected: every coefficient in this package is exact.
    """
    if type(value) is mpq:
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, mpz)):
        return mpq(value)
    if isinstance(value, _RationalABC):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise ValueError(f"not a rational literal: {value!r}")
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return mpq(int(num), int(den) if den else 1)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_rational(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
