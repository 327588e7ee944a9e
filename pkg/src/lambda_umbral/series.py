"""Truncated formal power series over the rationals.

A :class:`Series` of order ``N`` stores the coefficients of degrees
``0 .. N-1``; everything above is dropped. All operations here are exact in
the stored range. :class:`BiSeries` is the bivariate analogue in ``(x, y)``,
truncated by total degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .ring import as_rational, binomial, format_rational

VARIABLES = ("t", "x")


class SeriesError(ValueError):
    """Mismatched operands or a violated constant-term precondition."""


def _check_var(var: str) -> None:
    if var not in VARIABLES:
        raise SeriesError(f"unknown series variable {var!r}")


def _check_order(order: int) -> None:
    if order < 1:
        raise SeriesError(f"truncation order must be >= 1, got {order}")


@dataclass(frozen=True)
class Series:
    var: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        _check_var(self.var)
        _check_order(len(self.coeffs))
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Iterable, order: int | None = None) -> "Series":
        """Build a series, padding with zeros or truncating to ``order``."""
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = len(cs)
        cs = (cs + [Fraction(0)] * order)[:order]
        return cls(var, tuple(cs))

    @classmethod
    def zero(cls, var: str, order: int) -> "Series":
        _check_order(order)
        return cls(var, (Fraction(0),) * order)

    @classmethod
    def constant(cls, var: str, order: int, c=1) -> "Series":
        return cls.from_coeffs(var, [c], order)

    @classmethod
    def monomial(cls, var: str, order: int, k: int, c=1) -> "Series":
        """``c * var^k``; zero if ``k`` is beyond the truncation."""
        cs = [Fraction(0)] * order
        if k < order:
            cs[k] = as_rational(c)
        return cls(var, tuple(cs))

    # -- basic queries ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Lowest degree with a nonzero coefficient (None for zero)."""
        return next((k for k, c in enumerate(self.coeffs) if c), None)

    def degree(self) -> int | None:
        """Highest stored degree with a nonzero coefficient (None for zero)."""
        return next((k for k in reversed(range(self.order)) if self.coeffs[k]), None)

    def is_delta(self) -> bool:
        return self.order >= 2 and self.coeffs[0] == 0 and self.coeffs[1] != 0

    def truncate(self, order: int) -> "Series":
        return Series.from_coeffs(self.var, self.coeffs, order)

    def rename(self, var: str) -> "Series":
        return Series(var, self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _same_space(self, other: "Series") -> None:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.var != self.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "Series") -> "Series":
        self._same_space(other)
        return Series(self.var, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        self._same_space(other)
        return Series(self.var, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Series":
        return Series(self.var, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "Series":
        c = as_rational(c)
        return Series(self.var, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise SeriesError("series powers need a nonnegative integer exponent")
        result = Series.constant(self.var, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift_constant(self, c) -> "Series":
        """``self + c``."""
        cs = list(self.coeffs)
        cs[0] += as_rational(c)
        return Series(self.var, tuple(cs))

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return render_terms(self.coeffs, lambda k: "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}"))

    def to_json(self) -> dict:
        return {"var": self.var, "order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        return cls.from_coeffs(data["var"], data["coeffs"], int(data["order"]))


def render_terms(coeffs: Sequence[Fraction], symbol) -> str:
    """Render ``sum c_k * symbol(k)`` skipping zeros, e.g. ``-1/2*t + t^2``.

    ``symbol(k)`` returning ``""`` marks a bare constant term.
    """
    parts: list[str] = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        sym = symbol(k)
        mag = abs(c)
        if not sym:
            body = format_rational(mag)
        elif mag == 1:
            body = sym
        else:
            body = f"{format_rational(mag)}*{sym}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts) if parts else "0"


def series_add(a: Series, b: Series) -> Series:
    return a + b


def series_scale(c, a: Series) -> Series:
    return a.scale(c)


def series_mul(a: Series, b: Series) -> Series:
    """Truncated Cauchy product."""
    a._same_space(b)
    n = a.order
    out = [Fraction(0)] * n
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j in range(n - i):
                if bc[j]:
                    out[i + j] += ai * bc[j]
    return Series(a.var, tuple(out))


def series_compose(g: Series, f: Series) -> Series:
    """``g(f)`` for ``f`` with zero constant term, by Horner's rule.

    The result lives in ``f``'s variable; ``g``'s variable is a dummy.
    """
    if g.order != f.order:
        raise SeriesError(f"order mismatch: {g.order} vs {f.order}")
    if f.coeffs[0] != 0:
        raise SeriesError("inner series of a composition must have zero constant term")
    result = Series.zero(f.var, f.order)
    for c in reversed(g.coeffs):
        result = (result * f).shift_constant(c)
    return result


def series_reciprocal(a: Series) -> Series:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise SeriesError("reciprocal needs a nonzero constant term")
    n = a.order
    inv0 = 1 / a0
    b = [inv0] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        b[k] = -inv0 * sum(a.coeffs[j] * b[k - j] for j in range(1, k + 1))
    return Series(a.var, tuple(b))


def series_exp(a: Series) -> Series:
    """``exp(a)`` for ``a(0) = 0``, via ``b' = a' b``."""
    if a.coeffs[0] != 0:
        raise SeriesError("exp needs a zero constant term")
    n = a.order
    b = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        b[k] = sum(j * a.coeffs[j] * b[k - j] for j in range(1, k + 1)) / k
    return Series(a.var, tuple(b))


def series_log(a: Series) -> Series:
    """``log(a)`` for ``a(0) = 1``, via ``a b' = a'``."""
    if a.coeffs[0] != 1:
        raise SeriesError("log needs constant term 1")
    n = a.order
    b = [Fraction(0)] * n
    for k in range(1, n):
        acc = k * a.coeffs[k] - sum(j * b[j] * a.coeffs[k - j] for j in range(1, k))
        b[k] = acc / k
    return Series(a.var, tuple(b))


@dataclass(frozen=True)
class BiSeries:
    """Series in ``x`` and ``y`` keeping the total degrees ``< order``.

    ``rows[i][j]`` is the coefficient of ``x^i y^j``, so row ``i`` has
    ``order - i`` entries.
    """

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        _check_order(n)
        if any(len(r) != n - i for i, r in enumerate(self.rows)):
            raise SeriesError("BiSeries rows must be triangular")

    @classmethod
    def zero(cls, order: int) -> "BiSeries":
        return cls(tuple((Fraction(0),) * (order - i) for i in range(order)))

    @classmethod
    def from_dict(cls, order: int, coeffs: dict) -> "BiSeries":
        rows = [[Fraction(0)] * (order - i) for i in range(order)]
        for (i, j), c in coeffs.items():
            if i + j < order:
                rows[i][j] += as_rational(c)
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def outer(cls, a: Series, b: Series) -> "BiSeries":
        """``a(x) * b(y)``, truncated at total degree ``< order``."""
        if a.order != b.order:
            raise SeriesError(f"order mismatch: {a.order} vs {b.order}")
        n = a.order
        return cls(tuple(tuple(a.coeffs[i] * b.coeffs[j] for j in range(n - i)) for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    def coeff(self, i: int, j: int) -> Fraction:
        if i + j >= self.order:
            raise IndexError(f"x^{i} y^{j} is beyond total degree {self.order - 1}")
        return self.rows[i][j]

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                yield (i, j), c

    def x_series(self, j: int, order: int | None = None) -> Series:
        """The coefficient of ``y^j`` as a series in ``x`` (zeros past the truncation)."""
        order = self.order if order is None else order
        return Series.from_coeffs("x", [self.rows[i][j] for i in range(self.order - j)], order)

    def _check(self, other: "BiSeries") -> None:
        if not isinstance(other, BiSeries):
            raise TypeError(f"expected BiSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        return BiSeries(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        return BiSeries(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "BiSeries":
        c = as_rational(c)
        return BiSeries(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.scale(other)
        self._check(other)
        n = self.order
        out = [[Fraction(0)] * (n - i) for i in range(n)]
        for (i, j), c in self.items():
            if not c:
                continue
            for (k, l), d in other.items():
                if d and i + j + k + l < n:
                    out[i + k][j + l] += c * d
        return BiSeries(tuple(tuple(r) for r in out))

    __rmul__ = scale

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise SeriesError("cannot raise the truncation order of a BiSeries")
        return BiSeries(tuple(self.rows[i][: order - i] for i in range(order)))

    def first_difference(self, other: "BiSeries") -> tuple[int, int] | None:
        """Lowest ``(i, j)`` (by total degree, then ``i``) where the two differ."""
        self._check(other)
        for d in range(self.order):
            for i in range(d + 1):
                if self.rows[i][d - i] != other.rows[i][d - i]:
                    return i, d - i
        return None

    def __str__(self) -> str:
        terms = []
        for d in range(self.order):
            for i in range(d, -1, -1):
                c = self.rows[i][d - i]
                if c:
                    terms.append((c, _xy(i, d - i)))
        return render_terms([c for c, _ in terms], lambda k: terms[k][1])

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[format_rational(c) for c in r] for r in self.rows]}


def _xy(i: int, j: int) -> str:
    parts = []
    for var, e in (("x", i), ("y", j)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


def substitute_sum(p: Series) -> BiSeries:
    """``p(x + y)``; exact because the substitution keeps total degree."""
    if p.var != "x":
        raise SeriesError(f"substitute_sum expects a series in x, got {p.var}")
    n = p.order
    rows = [[Fraction(0)] * (n - i) for i in range(n)]
    for m, c in enumerate(p.coeffs):
        if c:
            for j in range(m + 1):
                rows[j][m - j] += c * binomial(m, j)
    return BiSeries(tuple(tuple(r) for r in rows))
