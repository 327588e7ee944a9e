"""The free Baxter algebra of weight lambda on the rationals.

Elements are truncated sums ``sum c_n u_n`` with the product

    u_m u_n = sum_k C(m+n-k, n) C(n, k) lambda^k u_{m+n-k}

and the Baxter operator ``P: u_n -> u_{n+1}``. The lowest index in ``u_m u_n``
is ``max(m, n)``, so ``span{u_n : n >= N}`` is an ideal and truncating at
``N`` loses nothing below ``N``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .ring import as_rational, binomial, format_rational
from .series import render_terms


class BaxterError(ValueError):
    pass


@dataclass(frozen=True)
class BaxterElement:
    weight: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise BaxterError("truncation order must be >= 1")
        object.__setattr__(self, "weight", as_rational(self.weight))
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, weight, coeffs: Iterable, order: int | None = None) -> "BaxterElement":
        cs = [as_rational(c) for c in coeffs]
        order = len(cs) if order is None else order
        return cls(as_rational(weight), tuple((cs + [Fraction(0)] * order)[:order]))

    @classmethod
    def zero(cls, weight, order: int) -> "BaxterElement":
        return cls.from_coeffs(weight, [], order)

    @classmethod
    def basis(cls, n: int, weight, order: int, c=1) -> "BaxterElement":
        """``c * u_n`` (zero when ``n >= order``)."""
        cs = [Fraction(0)] * order
        if n < order:
            cs[n] = as_rational(c)
        return cls(as_rational(weight), tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "BaxterElement") -> None:
        if not isinstance(other, BaxterElement):
            raise TypeError(f"expected BaxterElement, got {type(other).__name__}")
        if other.weight != self.weight:
            raise BaxterError(f"weight mismatch: {self.weight} vs {other.weight}")
        if other.order != self.order:
            raise BaxterError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "BaxterElement") -> "BaxterElement":
        self._check(other)
        return BaxterElement(self.weight, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BaxterElement") -> "BaxterElement":
        self._check(other)
        return BaxterElement(self.weight, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BaxterElement":
        return BaxterElement(self.weight, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "BaxterElement":
        c = as_rational(c)
        return BaxterElement(self.weight, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BaxterElement):
            return baxter_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self) -> str:
        # leading (highest) index first: ``2*u2 + 1/2*u1``
        top = self.order - 1
        return render_terms(self.coeffs[::-1], lambda k: f"u{top - k}")

    def to_json(self) -> dict:
        return {
            "lambda": format_rational(self.weight),
            "order": self.order,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BaxterElement":
        return cls.from_coeffs(data["lambda"], data["coeffs"], int(data["order"]))


@lru_cache(maxsize=None)
def basis_product(m: int, n: int, weight: Fraction) -> tuple[tuple[int, Fraction], ...]:
    """Untruncated ``u_m u_n`` as ``((index, coefficient), ...)``."""
    terms = []
    for k in range(min(m, n) + 1):
        c = binomial(m + n - k, n) * binomial(n, k) * weight**k
        if c:
            terms.append((m + n - k, Fraction(c)))
    return tuple(terms)


@lru_cache(maxsize=None)
def _integer_table(m: int, n: int) -> tuple[tuple[int, int, int], ...]:
    """``u_m u_n`` as ``(index, power of lambda, integer coefficient)``."""
    return tuple((m + n - k, k, binomial(m + n - k, n) * binomial(n, k)) for k in range(min(m, n) + 1))


def _integer_coeffs(a: BaxterElement) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in a.coeffs))
    return [c.numerator * (den // c.denominator) for c in a.coeffs], den


def baxter_product(a: BaxterElement, b: BaxterElement) -> BaxterElement:
    # Work in integers: with lambda = p/r, every lambda^k is p^k r^(top-k) / r^top.
    a._check(b)
    n = a.order
    top = n - 1
    xs, da = _integer_coeffs(a)
    ys, db = _integer_coeffs(b)
    p, r = a.weight.numerator, a.weight.denominator
    lam_pow = [p**k * r ** (top - k) for k in range(n)]
    acc = [0] * n
    for i, x in enumerate(xs):
        if not x:
            continue
        for j, y in enumerate(ys):
            if not y:
                continue
            xy = x * y
            for idx, k, c in _integer_table(i, j):
                if idx < n:
                    acc[idx] += xy * c * lam_pow[k]
    den = da * db * r**top
    return BaxterElement(a.weight, tuple(Fraction(v, den) for v in acc))


def baxter_operator_P(a: BaxterElement) -> BaxterElement:
    """``u_n -> u_{n+1}``; the top coefficient falls off the truncation."""
    return BaxterElement(a.weight, (Fraction(0),) + a.coeffs[:-1])


def shift_by(steps: int) -> Callable[[BaxterElement], BaxterElement]:
    """``u_n -> u_{n+steps}``; only ``steps == 1`` is a Baxter operator."""

    def op(a: BaxterElement) -> BaxterElement:
        return BaxterElement(a.weight, ((Fraction(0),) * steps + a.coeffs)[: a.order])

    return op


def baxter_axiom_sides(
    op: Callable[[BaxterElement], BaxterElement], a: BaxterElement, b: BaxterElement
) -> tuple[BaxterElement, BaxterElement]:
    """Both sides of ``P(a)P(b) = P(aP(b)) + P(bP(a)) + lambda P(ab)``."""
    lhs = op(a) * op(b)
    rhs = op(a * op(b)) + op(b * op(a)) + op(a * b).scale(a.weight)
    return lhs, rhs


# -- alternative bases v_n of U_lambda C -------------------------------------
#
# Only valuation-triangular bases (v_n in span{u_m : m >= n}, nonzero u_n
# coefficient) are handled: for them v_N lies in the truncation ideal, so the
# shift v_n -> v_{n+1} is exact on the truncated algebra.


def check_valuation_triangular(rows: Sequence[BaxterElement]) -> None:
    n = len(rows)
    for i, row in enumerate(rows):
        if row.order != n:
            raise BaxterError("need exactly `order` basis elements")
        if row.coeffs[i] == 0 or any(row.coeffs[:i]):
            raise BaxterError(f"basis element {i} is not valuation-triangular")


def expand_in_basis(rows: Sequence[BaxterElement], a: BaxterElement) -> list[Fraction]:
    """Coefficients ``c`` with ``a = sum c_n v_n``."""
    check_valuation_triangular(rows)
    rest = list(a.coeffs)
    out = []
    for i, row in enumerate(rows):
        c = rest[i] / row.coeffs[i]
        out.append(c)
        if c:
            for j in range(i, len(rest)):
                rest[j] -= c * row.coeffs[j]
    return out


def basis_shift_operator(rows: Sequence[BaxterElement]) -> Callable[[BaxterElement], BaxterElement]:
    """The linear map ``v_n -> v_{n+1}`` (with ``v_N`` = 0 in the truncation)."""
    check_valuation_triangular(rows)
    weight, order = rows[0].weight, rows[0].order

    def op(a: BaxterElement) -> BaxterElement:
        out = BaxterElement.zero(weight, order)
        for n, c in enumerate(expand_in_basis(rows, a)[:-1]):
            if c:
                out = out + rows[n + 1].scale(c)
        return out

    return op


def divided_power_table(m: int, n: int, weight: Fraction) -> list[tuple[int, Fraction]]:
    """Right-hand side of ``v_m v_n = sum_k C(m+n-k, n) C(n, k) lambda^k v_{m+n-k}``."""
    return list(basis_product(m, n, as_rational(weight)))


def divided_power_defect(rows: Sequence[BaxterElement]) -> tuple[int, int] | None:
    """First ``(m, n)`` where the table fails in the truncated algebra, else None.

    Rows must be valuation-triangular, so ``v_j`` for ``j >= N`` is zero.
    """
    check_valuation_triangular(rows)
    order = len(rows)
    for m in range(order):
        for n in range(order):
            lhs = rows[m] * rows[n]
            rhs = BaxterElement.zero(rows[0].weight, rows[0].order)
            for idx, c in divided_power_table(m, n, rows[0].weight):
                if idx < order:
                    rhs = rhs + rows[idx].scale(c)
            if lhs != rhs:
                return m, n
    return None


_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([a-z])(\d+)\s*")


def parse_combination(text: str, symbol: str = "u") -> dict[int, Fraction]:
    """Parse ``2*u1 + u2 - 1/3*u0`` into ``{index: coefficient}``."""
    out: dict[int, Fraction] = {}
    pos = 0
    text = text.strip()
    if not text:
        raise BaxterError("empty combination")
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.group(3) != symbol or (pos > 0 and m.group(1) is None):
            raise BaxterError(f"cannot parse {text!r} at offset {pos}")
        sign, coeff, _, idx = m.groups()
        c = Fraction(coeff) if coeff else Fraction(1)
        n = int(idx)
        out[n] = out.get(n, Fraction(0)) + (-c if sign == "-" else c)
        pos = m.end()
    return out


def parse_element(text: str, weight, order: int) -> BaxterElement:
    terms = parse_combination(text, "u")
    if max(terms) >= order:
        raise BaxterError(f"index {max(terms)} is beyond truncation order {order}")
    return BaxterElement.from_coeffs(weight, [terms.get(n, 0) for n in range(order)], order)
