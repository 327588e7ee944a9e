import json
import math
from fractions import Fraction

import pytest

from lambda_umbral import verify
from lambda_umbral.baxter import BaxterElement
from lambda_umbral.parser import parse_series
from lambda_umbral.series import Series
from lambda_umbral.umbral import PseudoBasis, e_lambda_basis, tau_basis

F = Fraction


def test_report_requires_counterexample_on_fail():
    with pytest.raises(ValueError):
        verify.VerifyReport("x", {}, verify.FAIL)
    with pytest.raises(ValueError):
        verify.VerifyReport("x", {}, "maybe")


def test_report_json_schema():
    r = verify.verify_baxter_axiom(F(2, 3), order=6, trials=3, op="shift2")
    data = json.loads(r.dumps())
    assert set(data) == {"name", "params", "status", "counterexample"}
    assert data["status"] == "fail"
    assert set(data["counterexample"]) == {"indices", "lhs", "rhs"}
    assert data["params"]["lambda"] == "2/3"
    assert all(isinstance(i, int) for i in data["counterexample"]["indices"])
    ok = json.loads(verify.verify_baxter_axiom(0, order=6, trials=3).dumps())
    assert ok["status"] == "pass" and ok["counterexample"] is None


def test_report_text():
    r = verify.check_zeilberger_recurrence(max_n=3, max_k=3, max_i=3, max_w=2, perturb=True)
    text = str(r)
    assert text.startswith("zeilberger [") and ": fail" in text and "at indices" in text


def test_json_is_deterministic():
    a = verify.verify_pairing_product(e_lambda_basis(1, 6), 1, trials=5, seed=7).dumps()
    b = verify.verify_pairing_product(e_lambda_basis(1, 6), 1, trials=5, seed=7).dumps()
    assert a == b


@pytest.mark.parametrize("lam", [F(0), F(1), F(-1), F(2, 3)])
def test_baxter_axiom(lam):
    assert verify.verify_baxter_axiom(lam, order=10, trials=10)
    bad = verify.verify_baxter_axiom(lam, order=10, trials=10, op="shift2")
    assert not bad and bad.counterexample.lhs != bad.counterexample.rhs


def test_divided_power_on_tau_basis():
    assert verify.verify_divided_power(tau_basis(parse_series("log(1+t)", 8), F(-1)), F(-1))


def test_divided_power_fails_on_monomials():
    r = verify.verify_divided_power(PseudoBasis.monomials("t", 6), F(0))
    # t * t = t^2 but the table wants 2 t^2
    assert not r and r.counterexample.indices == (1, 1, 2)


def test_lambda_binomial_controls():
    assert verify.verify_lambda_binomial(e_lambda_basis(F(1, 2), 8), F(1, 2))
    r = verify.verify_lambda_binomial(PseudoBasis.monomials("x", 8), F(1))
    assert not r and r.counterexample.indices[0] == 1


def test_monomials_are_binomial_at_weight_zero():
    assert verify.verify_lambda_binomial(PseudoBasis.monomials("x", 8), F(0))


def test_symmetry_holds_for_any_rows():
    rows = PseudoBasis.from_matrix("x", [[1, 2, 0, 5], [0, 3, 1, 0], [7, 0, 0, 1], [0, 0, 2, 2]])
    assert verify.verify_binomial_symmetry(rows, F(3, 5))


def test_pairing_product_controls():
    assert verify.verify_pairing_product(e_lambda_basis(-1, 8), -1, trials=5)
    r = verify.verify_pairing_product(PseudoBasis.monomials("x", 8), 1, trials=5)
    assert not r


def test_shift_invariance_small():
    assert verify.verify_shift_invariance(F(1, 2), order=6)


def test_eqinv_small_box_and_known_counts():
    assert verify.check_identity_eqinv(6, 6, 6, 6)
    # the identity at a tuple where n - k goes negative
    lhs, rhs = verify.eqinv_sides(1, 3, 2, 2)
    assert lhs == rhs


def test_eqinv_needs_negative_upper_indices():
    # with binomials forced to vanish for negative tops the identity breaks
    def vanishing(m, k):
        return math.comb(m, k) if 0 <= k <= m else 0

    def sides(n, k, i, w):
        b = vanishing
        lhs = sum(b(k, s) * b(n - k + s, i) * b(i, w - s) for s in range(w + 1))
        rhs = sum(b(k, w - s) * b(n + s - i, s) * b(n - k, i - s) for s in range(w + 1))
        return lhs, rhs

    bad = [(n, k, i, w) for n in range(5) for k in range(5) for i in range(5) for w in range(5) if sides(n, k, i, w)[0] != sides(n, k, i, w)[1]]
    assert bad and all(k > n for n, k, _, _ in bad)


@pytest.mark.parametrize("side", ["left", "right"])
def test_zeilberger(side):
    assert verify.check_zeilberger_recurrence(side, 6, 6, 6, 5)
    bad = verify.check_zeilberger_recurrence(side, 6, 6, 6, 5, perturb=True)
    assert not bad and "flag" not in bad.params


def test_zeilberger_bad_side():
    with pytest.raises(ValueError):
        verify.check_zeilberger_recurrence("middle")


def test_compatibility_matrix_is_identity():
    m = verify.compatibility_matrix(F(-2, 3), 7)
    assert m == [[F(int(i == j)) for j in range(7)] for i in range(7)]
    assert verify.verify_compatibility(F(-2, 3), 7)


def test_functional_divided_power_detects_scaling():
    rows = [BaxterElement.basis(n, 1, 6, c=2**n) for n in range(6)]
    assert not verify.verify_functional_divided_power(rows)
    rows = [BaxterElement.basis(n, 1, 6) for n in range(6)]
    assert verify.verify_functional_divided_power(rows)


@pytest.mark.parametrize("lam", [F(0), F(1), F(1, 2)])
def test_ucl_linear_delta(lam):
    r = verify.verify_theorem_ucl(parse_series("3*t", 7), lam)
    assert r, str(r)
    assert r.params["subchecks"] == {"binomial": "pass", "pairing-product": "pass", "divided-power-dual": "pass", "char0": "pass"}


def test_ucl_weight_zero_nonlinear():
    assert verify.verify_theorem_ucl(parse_series("t/(1-t)", 7), 0)


def test_ucl_reports_failing_subcheck():
    r = verify.verify_theorem_ucl(parse_series("exp(t)-1", 6), 1)
    assert not r
    assert r.params["failed_subcheck"] == "binomial"
    assert r.params["subchecks"]["char0"] == "pass"


@pytest.mark.parametrize("expr", ["t", "exp(t)-1", "t - t^2/3"])
@pytest.mark.parametrize("lam", [F(0), F(1)])
def test_associated_duality(expr, lam):
    assert verify.verify_associated_duality(parse_series(expr, 6), lam)


def test_zeilberger_flags_a_broken_operator(monkeypatch):
    # an operator that annihilates neither side at w = 0 is reported as a likely typo
    monkeypatch.setattr(verify, "recurrence_coefficients", lambda n, k, i, w: (1, 0, 0))
    r = verify.check_zeilberger_recurrence("left", 3, 3, 3, 2)
    assert not r and r.params["flag"] == "possible typo in the recurrence"
