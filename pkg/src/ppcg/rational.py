"""Parsing and formatting of exact rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, str, Fraction, float]

INF = math.inf


def as_fraction(value: RationalLike) -> Fraction:
    """Convert ``value`` to a Fraction without any rounding.

    Strings may be integers, decimals (``"0.63"``) or ``"p/q"``. Floats are
    taken through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite rational: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_fraction(value: Fraction | float) -> str:
    """``"p/q"`` (or ``"p"``) for rationals, ``"inf"`` for +infinity."""
    if isinstance(value, float):
        if value == INF:
            return "inf"
        raise TypeError("only +inf may be passed as a float")
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_ratio(text: str) -> Fraction | float:
    """Inverse of :func:`format_fraction`."""
    if text.strip().lower() == "inf":
        return INF
    return as_fraction(text)


def to_decimal(value: Fraction | float, digits: int = 12) -> str:
    if isinstance(value, float):
        return "inf" if value == INF else repr(value)
    return f"{float(value):.{digits}g}"


def sqrt_bounds(q: Fraction, scale_digits: int = 20) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 10**-scale_digits``.

    Exact when ``q`` is a perfect rational square.
    """
    if q < 0:
        raise ValueError("square root of a negative number")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        root = Fraction(rn, rd)
        return root, root
    # sqrt(num/den) = sqrt(num*den)/den
    scale = 10**scale_digits
    radicand = num * den * scale * scale
    r = math.isqrt(radicand)
    lo = Fraction(r, den * scale)
    hi = Fraction(r + 1, den * scale)
    return lo, hi
