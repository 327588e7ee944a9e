"""The lambda-umbral calculus on truncated series.

Reference frames:

* ``q_n = e_lambda(x)^n`` is the fixed lambda-binomial basis of the x-side;
  the functional ``u_n`` of the Baxter algebra pairs with it as
  ``<u_n | q_k> = delta(n, k)``.
* ``tau_n(t) = t(t - lambda)...(t - (n-1) lambda)/n!`` identifies polynomials
  in ``t`` with functionals, ``tau_n(t) <-> u_n``.

Two shapes of triangularity occur. Rows of ``e_lambda_basis`` and of any
x-side basis dual to a polynomial family start at degree ``n``
("valuation"); ``tau_n(t)`` and classical associated sequences are polynomials
of degree ``n`` ("degree"). Both give exact expansions by substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .baxter import BaxterElement
from .ring import as_rational, binomial, factorial, format_rational
from .series import BiSeries, Series, SeriesError, substitute_sum


class NotAPseudoBasis(ValueError):
    pass


@dataclass(frozen=True)
class PseudoBasis:
    """``N`` series ``p_0 .. p_{N-1}`` of order ``N`` in one variable.

    ``weight`` records the lambda a basis was built for, when there is one.
    """

    var: str
    rows: tuple[Series, ...]
    weight: Fraction | None = None

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise NotAPseudoBasis("empty basis")
        for r in self.rows:
            if r.var != self.var or r.order != n:
                raise NotAPseudoBasis(f"rows must be order-{n} series in {self.var}")
        if self.weight is not None:
            object.__setattr__(self, "weight", as_rational(self.weight))

    @classmethod
    def from_matrix(cls, var: str, matrix: Sequence[Sequence], weight=None) -> "PseudoBasis":
        return cls(var, tuple(Series.from_coeffs(var, row, len(matrix)) for row in matrix), weight)

    @classmethod
    def monomials(cls, var: str, order: int, weight=None) -> "PseudoBasis":
        return cls(var, tuple(Series.monomial(var, order, n) for n in range(order)), weight)

    @property
    def order(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, n: int) -> Series:
        return self.rows[n]

    def row(self, n: int) -> Series:
        return self.rows[n]

    @property
    def matrix(self) -> list[list[Fraction]]:
        return [list(r.coeffs) for r in self.rows]

    @property
    def shape(self) -> str | None:
        """``"degree"``, ``"valuation"`` or None if not triangular with nonzero diagonal."""
        m = self.matrix
        if any(m[i][i] == 0 for i in range(self.order)):
            return None
        if _linalg.is_lower(m):
            return "degree"
        if _linalg.is_upper(m):
            return "valuation"
        return None

    def combine(self, coeffs: Sequence) -> Series:
        """``sum c_n p_n``."""
        out = Series.zero(self.var, self.order)
        for c, r in zip(coeffs, self.rows):
            if c:
                out = out + r.scale(c)
        return out

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "order": self.order,
            "rows": [[format_rational(c) for c in r.coeffs] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PseudoBasis":
        return cls.from_matrix(data["var"], data["rows"])

    def __str__(self) -> str:
        return "\n".join(f"{self.var}{n}: {r}" for n, r in enumerate(self.rows))


def _weight(lam) -> Fraction:
    return as_rational(lam)


def e_lambda(lam, order: int, var: str = "x") -> Series:
    """``(e^{lambda x} - 1)/lambda = sum_{k>=1} lambda^{k-1} x^k / k!``."""
    lam = _weight(lam)
    return Series.from_coeffs(var, [0] + [lam ** (k - 1) / factorial(k) for k in range(1, order)], order)


def e_lambda_basis(lam, order: int) -> PseudoBasis:
    lam = _weight(lam)
    e = e_lambda(lam, order)
    rows = [Series.constant("x", order)]
    for _ in range(1, order):
        rows.append(rows[-1] * e)
    return PseudoBasis("x", tuple(rows), lam)


def tau_basis(f: Series, lam, order: int | None = None) -> PseudoBasis:
    """Rows ``tau_n(f) = f (f - lambda) ... (f - (n-1) lambda) / n!``."""
    lam = _weight(lam)
    if order is not None:
        if order > f.order:
            raise SeriesError(f"f is only known to order {f.order}")
        f = f.truncate(order)
    if not f.is_delta():
        raise SeriesError(f"not a delta series: {f}")
    rows = [Series.constant(f.var, f.order)]
    for n in range(1, f.order):
        rows.append((rows[-1] * f.shift_constant(-(n - 1) * lam)).scale(Fraction(1, n)))
    return PseudoBasis(f.var, tuple(rows), lam)


def basis_expand(p: Series, basis: PseudoBasis) -> tuple[Fraction, ...]:
    """The unique ``c`` with ``p = sum c_n basis[n]`` in the truncation."""
    if p.var != basis.var or p.order != basis.order:
        raise SeriesError("series and basis live in different spaces")
    shape = basis.shape
    if shape is None:
        raise NotAPseudoBasis("basis matrix is not triangular with nonzero diagonal")
    n = basis.order
    m = basis.matrix
    rest = list(p.coeffs)
    c = [Fraction(0)] * n
    # columns in the order that exposes one new unknown at a time
    cols = range(n) if shape == "valuation" else range(n - 1, -1, -1)
    for k in cols:
        c[k] = rest[k] / m[k][k]
        if c[k]:
            for j in range(n):
                rest[j] -= c[k] * m[k][j]
    if any(rest):
        raise NotAPseudoBasis("expansion did not reproduce the series")
    return tuple(c)


def pair_lambda(u: BaxterElement, p: Series, q: PseudoBasis) -> Fraction:
    """``<u | p>_lambda`` with ``<u_n | q_k> = delta(n, k)``."""
    if u.order != q.order:
        raise SeriesError(f"order mismatch: {u.order} vs {q.order}")
    if q.weight is not None and q.weight != u.weight:
        raise SeriesError(f"weight mismatch: {u.weight} vs {q.weight}")
    return sum((a * b for a, b in zip(u.coeffs, basis_expand(p, q))), Fraction(0))


def pair_classical(f: Series, p: Series) -> Fraction:
    """``[f | p]_0 = sum_k k! f_k p_k``; equals the true pairing when ``f`` is a polynomial of degree < N."""
    if f.order != p.order:
        raise SeriesError(f"order mismatch: {f.order} vs {p.order}")
    return sum((factorial(k) * a * b for k, (a, b) in enumerate(zip(f.coeffs, p.coeffs)) if a and b), Fraction(0))


def tau_to_functional(g: Series, lam) -> BaxterElement:
    """Read a polynomial in ``t`` as a functional via ``tau_n(t) -> u_n``."""
    lam = _weight(lam)
    ref = tau_basis(Series.monomial(g.var, g.order, 1), lam)
    return BaxterElement(lam, basis_expand(g, ref))


def functional_to_tau(u: BaxterElement, var: str = "t") -> Series:
    """Inverse of :func:`tau_to_functional`."""
    ref = tau_basis(Series.monomial(var, u.order, 1), u.weight)
    return ref.combine(u.coeffs)


def associated_functionals(f: Series, lam, order: int | None = None) -> list[BaxterElement]:
    """``tau_n(f)`` (truncated in ``t``) as elements of the Baxter algebra."""
    taus = tau_basis(f, lam, order)
    return [tau_to_functional(r, lam) for r in taus.rows]


def associated_sequence(f: Series, lam, order: int | None = None) -> PseudoBasis:
    """The x-side basis ``s`` dual to ``{tau_n(f)}``: ``<tau_n(f) | s_k> = delta(n, k)``.

    With ``A[n][m]`` the ``u_m``-coefficient of ``tau_n(f)``, the rows are
    ``s_k = sum_j B[k][j] q_j`` where ``B = (A^-1)^T``.
    """
    lam = _weight(lam)
    a = [list(u.coeffs) for u in associated_functionals(f, lam, order)]
    b = _linalg.transpose(_linalg.inverse(a))
    q = e_lambda_basis(lam, len(a))
    return PseudoBasis("x", tuple(q.combine(row) for row in b), lam)


def dual_functionals(basis: PseudoBasis, lam) -> list[BaxterElement]:
    """Functionals ``v_n`` with ``<v_n | basis[k]> = delta(n, k)``."""
    lam = _weight(lam)
    q = e_lambda_basis(lam, basis.order)
    s = [list(basis_expand(r, q)) for r in basis.rows]
    v = _linalg.transpose(_linalg.inverse(s))
    return [BaxterElement(lam, tuple(row)) for row in v]


def u_action(k: int, p: Series, q: PseudoBasis, lam) -> Series:
    """``u_k p`` where ``u_k q_n = sum_i lambda^i C(n, k) C(k, i) q_{n-k+i}``.

    Exact in degrees ``< N - k`` for a truncated ``p``; exact everywhere when
    ``p`` is a finite combination of the stored ``q_n``.
    """
    lam = _weight(lam)
    return q.combine(u_action_coeffs(k, basis_expand(p, q), lam))


def u_action_coeffs(k: int, c: Sequence[Fraction], lam: Fraction) -> list[Fraction]:
    """:func:`u_action` on coordinates: ``c`` in the q-basis, result likewise."""
    out = [Fraction(0)] * len(c)
    for n, cn in enumerate(c):
        if not cn or n < k:
            continue
        head = cn * binomial(n, k)
        for i in range(k + 1):
            out[n - k + i] += head * binomial(k, i) * lam**i
    return out


def act(u: BaxterElement, p: Series, q: PseudoBasis) -> Series:
    """Action of a general functional: ``sum_k u[k] * (u_k p)``."""
    out = Series.zero(p.var, p.order)
    for k, c in enumerate(u.coeffs):
        if c:
            out = out + u_action(k, p, q, u.weight).scale(c)
    return out


def coproduct_matrix(n: int, lam, order: int) -> list[list[Fraction]]:
    """``c[a][b]`` with ``Delta(q_n) = sum c[a][b] q_a (x) q_b``."""
    if not 0 <= n < order:
        raise ValueError(f"need 0 <= n < order, got n={n}")
    lam = _weight(lam)
    c = [[Fraction(0)] * order for _ in range(order)]
    for j in range(n + 1):
        for i in range(j + 1):
            c[n + i - j][j] += lam**i * binomial(n, j) * binomial(j, i)
    return c


def shift_bivariate(p: Series) -> BiSeries:
    """The formal shift ``E^y p = p(x + y)``."""
    return substitute_sum(p)
