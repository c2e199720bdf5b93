"""Exact scalar arithmetic shared by every other module.

Values are :class:`fractions.Fraction` instances, which are always kept in
lowest terms with a positive denominator and raise ``ZeroDivisionError``
on division by zero.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable

__all__ = [
    "Rational",
    "factorial",
    "double_factorial_odd",
    "multinomial",
    "binomial",
    "format_rational",
    "parse_rational",
]

Rational = Fraction


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative integer {k}")
    return math.factorial(k)


def double_factorial_odd(d: int) -> int:
    """Return (2d-1)!! = 1*3*...*(2d-1), with (-1)!! = 1 for d = 0."""
    if d < 0:
        raise ValueError(f"double_factorial_odd needs d >= 0, got {d}")
    return math.prod(range(1, 2 * d, 2))


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial of negative entries {parts}")
    out = 1
    total = 0
    for p in parts:
        total += p
        out *= math.comb(total, p)
    return out


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def format_rational(x: Fraction | int) -> str:
    """Serialize as ``"p/q"`` in lowest terms, or ``"p"`` when q = 1."""
    return str(Fraction(x))


_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational string: {text!r}")
    return Fraction(text)
