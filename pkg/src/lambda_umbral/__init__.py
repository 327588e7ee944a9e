"""Exact lambda-umbral calculus: free Baxter algebras, lambda-binomial
sequences, pairings and an executable check for each identity."""

from .baxter import BaxterElement, baxter_operator_P, baxter_product
from .parser import parse, parse_series, render
from .ring import Rational, binomial, format_rational, parse_rational
from .series import BiSeries, Series, series_compose, series_exp, series_log, series_reciprocal
from .umbral import (
    PseudoBasis,
    act,
    associated_sequence,
    basis_expand,
    coproduct_matrix,
    e_lambda,
    e_lambda_basis,
    pair_classical,
    pair_lambda,
    tau_basis,
    u_action,
)
from .verify import VerifyReport

__all__ = [
    "BaxterElement",
    "BiSeries",
    "PseudoBasis",
    "Rational",
    "Series",
    "VerifyReport",
    "act",
    "associated_sequence",
    "basis_expand",
    "baxter_operator_P",
    "baxter_product",
    "binomial",
    "coproduct_matrix",
    "e_lambda",
    "e_lambda_basis",
    "format_rational",
    "pair_classical",
    "pair_lambda",
    "parse",
    "parse_rational",
    "parse_series",
    "render",
    "series_compose",
    "series_exp",
    "series_log",
    "series_reciprocal",
    "tau_basis",
    "u_action",
]
