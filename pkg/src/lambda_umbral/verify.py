"""Executable checks for the identities of the lambda-umbral calculus.

Every check compares exact rationals and returns a :class:`VerifyReport`.
A failing report always names the first offending indices together with both
sides' values.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .baxter import (
    BaxterElement,
    baxter_axiom_sides,
    baxter_operator_P,
    basis_product,
    shift_by,
)
from .ring import as_rational, binomial, format_rational, signed_binomial
from .series import BiSeries, Series
from .umbral import (
    PseudoBasis,
    associated_functionals,
    associated_sequence,
    basis_expand,
    dual_functionals,
    e_lambda_basis,
    functional_to_tau,
    pair_classical,
    pair_lambda,
    shift_bivariate,
    tau_basis,
    u_action,
    u_action_coeffs,
)

PASS, FAIL = "pass", "fail"

# functionals drawn for randomized checks use coefficients in this range
COEFF_RANGE = (-9, 9)


@dataclass(frozen=True)
class Counterexample:
    indices: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "lhs": format_rational(self.lhs), "rhs": format_rational(self.rhs)}


@dataclass
class VerifyReport:
    name: str
    params: dict
    status: str
    counterexample: Counterexample | None = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": _jsonable(self.params),
            "status": self.status,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        shown = ", ".join(f"{k}={v}" for k, v in _jsonable(self.params).items())
        line = f"{self.name} [{shown}]: {self.status}"
        if self.counterexample:
            cx = self.counterexample
            line += f"\n  at indices {list(cx.indices)}: lhs = {format_rational(cx.lhs)}, rhs = {format_rational(cx.rhs)}"
        return line


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (Series, PseudoBasis, BaxterElement)):
        return str(value)
    return value


def _report(name: str, params: dict, cx: Counterexample | None) -> VerifyReport:
    return VerifyReport(name, params, FAIL if cx else PASS, cx)


def _random_element(rng: random.Random, lam: Fraction, order: int, support: int | None = None) -> BaxterElement:
    support = order if support is None else support
    lo, hi = COEFF_RANGE
    return BaxterElement.from_coeffs(lam, [rng.randint(lo, hi) for _ in range(support)], order)


def _series_cx(lhs: Series, rhs: Series, prefix: tuple[int, ...]) -> Counterexample | None:
    for k, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if a != b:
            return Counterexample(prefix + (k,), a, b)
    return None


def _bi_cx(lhs: BiSeries, rhs: BiSeries, prefix: tuple[int, ...], below: int | None = None) -> Counterexample | None:
    where = lhs.first_difference(rhs)
    if where is None or (below is not None and sum(where) >= below):
        return None
    i, j = where
    return Counterexample(prefix + (i, j), lhs.coeff(i, j), rhs.coeff(i, j))


# -- Baxter algebra ----------------------------------------------------------

# "shift2" (u_n -> u_{n+2}) is the negative control
OPERATORS: dict[str, Callable[[BaxterElement], BaxterElement]] = {
    "P": baxter_operator_P,
    "shift2": shift_by(2),
}


def verify_baxter_axiom(lam, order: int = 16, trials: int = 50, seed: int = 0, op: str = "P") -> VerifyReport:
    """``P(a)P(b) = P(aP(b)) + P(bP(a)) + lambda P(ab)`` on random pairs.

    Both sides only involve indices ``>= 1`` of the truncated inputs shifted
    up, so comparing every index below ``order`` is exact.
    """
    lam = as_rational(lam)
    operator = OPERATORS[op]
    rng = random.Random(seed)
    params = {"lambda": lam, "order": order, "trials": trials, "seed": seed, "operator": op}
    for t in range(trials):
        a = _random_element(rng, lam, order)
        b = _random_element(rng, lam, order)
        lhs, rhs = baxter_axiom_sides(operator, a, b)
        for k in range(order):
            if lhs[k] != rhs[k]:
                return _report("baxter-axiom", params, Counterexample((t, k), lhs[k], rhs[k]))
    return _report("baxter-axiom", params, None)


# -- bases -------------------------------------------------------------------


def verify_divided_power(rows: PseudoBasis, lam) -> VerifyReport:
    """``v_m v_n = sum_k C(m+n-k, n) C(n, k) lambda^k v_{m+n-k}`` for ``m + n < N``.

    Both sides are compared as truncated series, which is exact because the
    identity holds in the untruncated ring and every index on the right is
    ``<= m + n < N``. Counterexample indices are ``(m, n, degree)``.
    """
    lam = as_rational(lam)
    n_max = rows.order
    params = {"lambda": lam, "order": n_max, "var": rows.var}
    for m in range(n_max):
        for n in range(n_max - m):
            lhs = rows[m] * rows[n]
            rhs = Series.zero(rows.var, n_max)
            for idx, c in basis_product(m, n, lam):
                rhs = rhs + rows[idx].scale(c)
            cx = _series_cx(lhs, rhs, (m, n))
            if cx:
                return _report("divided-power", params, cx)
    return _report("divided-power", params, None)


def binomial_rhs(rows: PseudoBasis, lam: Fraction, n: int, symmetric: bool = False) -> BiSeries:
    """``sum_k lambda^k sum_i C(n,i) C(i,k) p_{n+k-i}(x) p_i(y)``.

    With ``symmetric`` the factors trade variables: ``p_i(x) p_{n+k-i}(y)``.
    """
    out = BiSeries.zero(rows.order)
    for i in range(n + 1):
        for k in range(i + 1):
            c = lam**k * binomial(n, i) * binomial(i, k)
            if not c:
                continue
            a, b = rows[n + k - i], rows[i]
            term = BiSeries.outer(b, a) if symmetric else BiSeries.outer(a, b)
            out = out + term.scale(c)
    return out


def verify_lambda_binomial(rows: PseudoBasis, lam) -> VerifyReport:
    """``p_n(x+y) = sum lambda^k C(n,i) C(i,k) p_{n+k-i}(x) p_i(y)`` at total degree ``< N``.

    Counterexample indices are ``(n, i, j)`` for the coefficient of ``x^i y^j``.
    """
    lam = as_rational(lam)
    params = {"lambda": lam, "order": rows.order}
    for n in range(rows.order):
        lhs = substitute_row(rows, n)
        cx = _bi_cx(lhs, binomial_rhs(rows, lam, n), (n,))
        if cx:
            return _report("binomial", params, cx)
    return _report("binomial", params, None)


def substitute_row(rows: PseudoBasis, n: int) -> BiSeries:
    row = rows[n]
    return shift_bivariate(row if row.var == "x" else row.rename("x"))


def verify_binomial_symmetry(rows: PseudoBasis, lam) -> VerifyReport:
    """The two double-sum forms agree (a pure reindexing, whatever the rows are)."""
    lam = as_rational(lam)
    params = {"lambda": lam, "order": rows.order}
    for n in range(rows.order):
        cx = _bi_cx(binomial_rhs(rows, lam, n), binomial_rhs(rows, lam, n, symmetric=True), (n,))
        if cx:
            return _report("symmetry", params, cx)
    return _report("symmetry", params, None)


def verify_pairing_product(rows: PseudoBasis, lam, trials: int = 20, seed: int = 0) -> VerifyReport:
    """``<uv | p_n> = sum lambda^i C(n,j) C(j,i) <u | p_{n+i-j}> <v | p_j>``.

    All basis pairs ``(u_a, u_b)`` with ``a, b < N/2`` are checked first, then
    ``trials`` random pairs with the same support, for every ``n < N/2``.
    Counterexample indices: ``(a, b, n)`` for basis pairs, ``(-1, trial, n)``
    for random ones.
    """
    lam = as_rational(lam)
    order = rows.order
    half = (order + 1) // 2
    q = e_lambda_basis(lam, order)
    params = {"lambda": lam, "order": order, "trials": trials, "seed": seed, "support": f"< {half}"}
    expansions = [basis_expand(r, q) for r in rows.rows]

    def pair(u: BaxterElement, k: int) -> Fraction:
        return sum((a * b for a, b in zip(u.coeffs, expansions[k])), Fraction(0))

    def both_sides(u: BaxterElement, v: BaxterElement, n: int) -> tuple[Fraction, Fraction]:
        lhs = pair(u * v, n)
        rhs = Fraction(0)
        for j in range(n + 1):
            for i in range(j + 1):
                c = lam**i * binomial(n, j) * binomial(j, i)
                if c:
                    rhs += c * pair(u, n + i - j) * pair(v, j)
        return lhs, rhs

    for a in range(half):
        for b in range(half):
            u, v = BaxterElement.basis(a, lam, order), BaxterElement.basis(b, lam, order)
            for n in range(half):
                lhs, rhs = both_sides(u, v, n)
                if lhs != rhs:
                    return _report("pairing-product", params, Counterexample((a, b, n), lhs, rhs))
    rng = random.Random(seed)
    for t in range(trials):
        u = _random_element(rng, lam, order, half)
        v = _random_element(rng, lam, order, half)
        for n in range(half):
            lhs, rhs = both_sides(u, v, n)
            if lhs != rhs:
                return _report("pairing-product", params, Counterexample((-1, t, n), lhs, rhs))
    return _report("pairing-product", params, None)


def verify_shift_invariance(lam, order: int = 10) -> VerifyReport:
    """``E^y (u_k q_n) = u_k (E^y q_n)`` for all ``k, n < N`` at total degree ``< N``.

    The right side applies ``u_k`` to each ``y``-coefficient of ``q_n(x+y)``
    as a series in ``x``. Because ``u_k`` on a truncated series is exact only
    below degree ``N - k``, the computation runs at guard order ``2N``.
    Counterexample indices: ``(k, n, i, j)`` for ``x^i y^j``.
    """
    lam = as_rational(lam)
    guard = 2 * order
    q = e_lambda_basis(lam, guard)
    params = {"lambda": lam, "order": order, "guard_order": guard}
    for n in range(order):
        shifted = shift_bivariate(q[n])
        # each y-coefficient expanded in q once, reused for every k
        ycols = [basis_expand(shifted.x_series(j, guard), q) for j in range(order)]
        for k in range(order):
            lhs = shift_bivariate(u_action(k, q[n], q, lam)).truncate(order)
            acted = {}
            for j, col in enumerate(ycols):
                res = q.combine(u_action_coeffs(k, col, lam))
                for i in range(order - j):
                    acted[(i, j)] = res[i]
            rhs = BiSeries.from_dict(order, acted)
            cx = _bi_cx(lhs, rhs, (k, n))
            if cx:
                return _report("shift-invariance", params, cx)
    return _report("shift-invariance", params, None)


# -- the binomial identity behind shift invariance -----------------------------


def eqinv_sides(n: int, k: int, i: int, w: int) -> tuple[int, int]:
    """Both sides of the triple-binomial identity (negative upper indices allowed)."""
    b = signed_binomial
    lhs = sum(b(k, s) * b(n - k + s, i) * b(i, w - s) for s in range(w + 1))
    rhs = sum(b(k, w - s) * b(n + s - i, s) * b(n - k, i - s) for s in range(w + 1))
    return lhs, rhs


def check_identity_eqinv(max_n: int = 12, max_k: int = 12, max_i: int = 12, max_w: int = 12) -> VerifyReport:
    params = {"max_n": max_n, "max_k": max_k, "max_i": max_i, "max_w": max_w}
    for n in range(max_n + 1):
        for k in range(max_k + 1):
            for i in range(max_i + 1):
                for w in range(max_w + 1):
                    lhs, rhs = eqinv_sides(n, k, i, w)
                    if lhs != rhs:
                        return _report("eqinv", params, Counterexample((n, k, i, w), Fraction(lhs), Fraction(rhs)))
    return _report("eqinv", params, None)


def recurrence_coefficients(n: int, k: int, i: int, w: int) -> tuple[int, int, int]:
    """Coefficients of ``F(w), F(w+1), F(w+2)`` in the annihilating operator."""
    c0 = (k + i - w) * (k - n + i - w - 1)
    c1 = (
        k * k - k * n + k * i - 3 * k * w - n * i + 2 * n * w + i * i - 3 * i * w
        + 2 * w * w - 4 * k + 2 * n - 4 * i + 5 * w + 3
    )
    c2 = -(w + 2) * (k - n + i - w - 2)
    return c0, c1, c2


def _side_function(side: str, perturb: bool) -> Callable[[int, int, int, int], int]:
    pick = 0 if side == "left" else 1

    def f(n, k, i, w):
        return eqinv_sides(n, k, i, w)[pick] + (1 if perturb else 0)

    return f


def _first_unannihilated(func, max_n, max_k, max_i, max_w):
    for n in range(max_n + 1):
        for k in range(max_k + 1):
            for i in range(max_i + 1):
                for w in range(max_w + 1):
                    c0, c1, c2 = recurrence_coefficients(n, k, i, w)
                    value = c0 * func(n, k, i, w) + c1 * func(n, k, i, w + 1) + c2 * func(n, k, i, w + 2)
                    if value:
                        return (n, k, i, w), value
    return None


def check_zeilberger_recurrence(
    side: str = "left", max_n: int = 10, max_k: int = 10, max_i: int = 10, max_w: int = 8, perturb: bool = False
) -> VerifyReport:
    """Apply the second-order recurrence in ``w`` to one side of the identity.

    ``perturb`` adds 1 to F as a negative control. The report also records
    whether the identity holds directly at ``w = 0, 1``; if the operator fails
    on both sides at ``w = 0`` the report flags a likely transcription issue
    in the operator itself.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    params = {
        "side": side, "max_n": max_n, "max_k": max_k, "max_i": max_i, "max_w": max_w, "perturb": perturb,
        "base_cases_w01": all(
            eqinv_sides(n, k, i, w)[0] == eqinv_sides(n, k, i, w)[1]
            for n in range(max_n + 1) for k in range(max_k + 1) for i in range(max_i + 1) for w in (0, 1)
        ),
    }
    hit = _first_unannihilated(_side_function(side, perturb), max_n, max_k, max_i, max_w)
    if hit is None:
        return _report("zeilberger", params, None)
    where, value = hit
    if not perturb:
        other = "right" if side == "left" else "left"
        if where[3] == 0 and _first_unannihilated(_side_function(other, False), max_n, max_k, max_i, 0):
            params["flag"] = "possible typo in the recurrence"
    return _report("zeilberger", params, Counterexample(where, Fraction(value), Fraction(0)))


# -- pairings and the characterization theorem --------------------------------


def verify_compatibility(lam, order: int = 12) -> VerifyReport:
    """``[tau_n(t) | e_lambda(x)^k]_0 = delta(n, k)`` for ``n, k < N``."""
    lam = as_rational(lam)
    taus = tau_basis(Series.monomial("t", order, 1), lam)
    q = e_lambda_basis(lam, order)
    params = {"lambda": lam, "order": order}
    for n in range(order):
        for k in range(order):
            value = pair_classical(taus[n], q[k])
            if value != (n == k):
                return _report("compatibility", params, Counterexample((n, k), value, Fraction(int(n == k))))
    return _report("compatibility", params, None)


def compatibility_matrix(lam, order: int) -> list[list[Fraction]]:
    taus = tau_basis(Series.monomial("t", order, 1), lam)
    q = e_lambda_basis(lam, order)
    return [[pair_classical(taus[n], q[k]) for k in range(order)] for n in range(order)]


def verify_functional_divided_power(rows: Sequence[BaxterElement]) -> VerifyReport:
    """The divided-power table for functionals, in the truncated Baxter algebra.

    Checked for ``m + n < N``. Counterexample indices ``(m, n, u-index)``.
    """
    lam = rows[0].weight
    order = len(rows)
    params = {"lambda": lam, "order": order}
    for m in range(order):
        for n in range(order - m):
            lhs = rows[m] * rows[n]
            rhs = BaxterElement.zero(lam, rows[0].order)
            for idx, c in basis_product(m, n, lam):
                rhs = rhs + rows[idx].scale(c)
            for j in range(rows[0].order):
                if lhs[j] != rhs[j]:
                    return _report("divided-power-dual", params, Counterexample((m, n, j), lhs[j], rhs[j]))
    return _report("divided-power-dual", params, None)


def verify_theorem_ucl(f: Series, lam, order: int | None = None, trials: int = 20, seed: int = 0) -> VerifyReport:
    """The three-way equivalence, run on the associated sequence of ``f``.

    * binomial: the associated sequence is of lambda-binomial type,
    * pairing-product: it satisfies the product formula for the pairing,
    * divided-power-dual: its dual functionals obey the divided-power table,
    * char0: the dual's first element recovers ``f`` and ``f_n = tau_n(f_1)``.
    """
    lam = as_rational(lam)
    if order is not None:
        f = f.truncate(order)
    n_max = f.order
    s = associated_sequence(f, lam)
    duals = dual_functionals(s, lam)
    subs = {
        "binomial": verify_lambda_binomial(s, lam),
        "pairing-product": verify_pairing_product(s, lam, trials, seed),
        "divided-power-dual": verify_functional_divided_power(duals),
        "char0": _char0_roundtrip(f, lam, duals),
    }
    params = {
        "f": str(f), "lambda": lam, "order": n_max,
        "subchecks": {name: r.status for name, r in subs.items()},
    }
    for name, r in subs.items():
        if not r.passed:
            params["failed_subcheck"] = name
            return _report("ucl", params, r.counterexample)
    return _report("ucl", params, None)


def _char0_roundtrip(f: Series, lam: Fraction, duals: Sequence[BaxterElement]) -> VerifyReport:
    """Read the dual functionals back as series in ``t``; ``f_1`` must be ``f``
    and every ``f_n`` must equal ``tau_n(f_1)``. Indices ``(n, degree)``."""
    params = {"lambda": lam, "order": f.order}
    fs = [functional_to_tau(v, f.var) for v in duals]
    cx = _series_cx(fs[1], f, (1,))
    if cx:
        return _report("char0", params, cx)
    rebuilt = tau_basis(fs[1], lam)
    for n, fn in enumerate(fs):
        cx = _series_cx(fn, rebuilt[n], (n,))
        if cx:
            return _report("char0", params, cx)
    return _report("char0", params, None)


def verify_associated_duality(f: Series, lam) -> VerifyReport:
    """``<tau_n(f) | s_k>_lambda = delta(n, k)`` for the associated sequence ``s``."""
    lam = as_rational(lam)
    s = associated_sequence(f, lam)
    q = e_lambda_basis(lam, s.order)
    params = {"f": str(f), "lambda": lam, "order": s.order}
    for n, v in enumerate(associated_functionals(f, lam)):
        for k in range(s.order):
            value = pair_lambda(v, s[k], q)
            if value != (n == k):
                return _report("duality", params, Counterexample((n, k), value, Fraction(int(n == k))))
    return _report("duality", params, None)
