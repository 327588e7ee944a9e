"""Exact scalars: rationals and the binomial/factorial coefficients."""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"(-?)(\d+)(?:/(\d+))?")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, ``-p/q`` or an integer ``p`` into a reduced Fraction.

    Unlike ``Fraction(str)`` this refuses decimals, exponents and spaces
    inside the literal, since the CLI and JSON formats only ever emit ``p/q``.
    """
    match = _RATIONAL_RE.fullmatch(text.strip())
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign else value


def format_rational(q) -> str:
    return str(Fraction(q))


def as_rational(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q'")
    return Fraction(value)


def binomial(m: int, k: int) -> int:
    """C(m, k) for m >= 0, vanishing outside 0 <= k <= m."""
    if m < 0:
        raise ValueError(f"binomial upper index must be nonnegative, got {m}")
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)


def signed_binomial(m: int, k: int) -> int:
    """C(m, k) extended to negative m by C(m, k) = (-1)^k C(k - m - 1, k).

    Still zero for k < 0. Needed where upper indices like n - k go negative.
    """
    if k < 0:
        return 0
    if m >= 0:
        return math.comb(m, k) if k <= m else 0
    return (-1) ** k * math.comb(k - m - 1, k)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)
