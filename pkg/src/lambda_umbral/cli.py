"""Command-line front end: ``lambda-umbral <command> [options]``.

Exit codes: 0 success or verification pass, 1 verification fail, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import verify
from ._linalg import SingularMatrixError
from .baxter import BaxterElement, BaxterError, parse_combination, parse_element
from .parser import ParseError, parse_series
from .ring import format_rational, parse_rational
from .series import Series, SeriesError
from .umbral import (
    NotAPseudoBasis,
    PseudoBasis,
    act,
    associated_sequence,
    coproduct_matrix,
    e_lambda_basis,
    functional_to_tau,
    pair_classical,
    pair_lambda,
    tau_basis,
    tau_to_functional,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INPUT_ERRORS = (ParseError, SeriesError, BaxterError, NotAPseudoBasis, SingularMatrixError, ValueError, ZeroDivisionError)


@dataclass(frozen=True)
class CliConfig:
    lam: Fraction = Fraction(0)
    order: int = 12
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.format not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")


class InputError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _order_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("order must be >= 1")
    return n


def _global_flags(parser: argparse.ArgumentParser, defaults: bool) -> None:
    # Subcommands repeat the flags with SUPPRESS so they work on either side
    # of the command name without clobbering values given before it.
    def d(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument("--lambda", dest="lam", type=_rational_arg, default=d(Fraction(0)), help="weight (default 0)")
    parser.add_argument("--order", type=_order_arg, default=d(12), help="truncation order N (default 12)")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")


def _config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(args.lam, args.order, args.format, args.seed)


def _emit(cfg: CliConfig, text: str, payload) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _series(text: str, cfg: CliConfig, variable: str) -> Series:
    return parse_series(text, cfg.order, variable)


# -- computation commands ----------------------------------------------------


def cmd_product(args, cfg: CliConfig) -> int:
    a = parse_element(args.a, cfg.lam, cfg.order)
    b = parse_element(args.b, cfg.lam, cfg.order)
    p = a * b
    _emit(cfg, str(p), p.to_json())
    return EXIT_OK


def cmd_tau(args, cfg: CliConfig) -> int:
    basis = tau_basis(_series(args.f, cfg, "t"), cfg.lam)
    if args.row is None:
        _emit(cfg, str(basis), basis.to_json())
        return EXIT_OK
    if not 0 <= args.row < basis.order:
        raise InputError(f"row must be in 0..{basis.order - 1}")
    row = basis[args.row]
    _emit(cfg, str(row), row.to_json())
    return EXIT_OK


def cmd_assoc(args, cfg: CliConfig) -> int:
    basis = associated_sequence(_series(args.f, cfg, "t"), cfg.lam)
    _emit(cfg, str(basis), basis.to_json())
    return EXIT_OK


def _looks_like_combination(text: str, symbol: str) -> bool:
    try:
        parse_combination(text, symbol)
    except BaxterError:
        return False
    return True


def _functional(text: str, cfg: CliConfig) -> BaxterElement:
    """``u3`` / ``2*u1 + u2`` literals, or a polynomial in t read via tau_n(t) <-> u_n."""
    if _looks_like_combination(text, "u"):
        return parse_element(text, cfg.lam, cfg.order)
    return tau_to_functional(_series(text, cfg, "t"), cfg.lam)


def _x_series(text: str, cfg: CliConfig, q: PseudoBasis) -> Series:
    """``q3`` / ``q1 + 2*q2`` literals in the e_lambda basis, or an expression in x."""
    if _looks_like_combination(text, "q"):
        terms = parse_combination(text, "q")
        if max(terms) >= cfg.order:
            raise InputError(f"index {max(terms)} is beyond truncation order {cfg.order}")
        return q.combine([terms.get(n, 0) for n in range(cfg.order)])
    return _series(text, cfg, "x")


def cmd_pair(args, cfg: CliConfig) -> int:
    q = e_lambda_basis(cfg.lam, cfg.order)
    p = _x_series(args.p, cfg, q)
    u = _functional(args.u, cfg)
    if args.mode == "lambda":
        value = pair_lambda(u, p, q)
    else:
        value = pair_classical(functional_to_tau(u), p)
    _emit(cfg, format_rational(value), {"mode": args.mode, "lambda": format_rational(cfg.lam), "value": format_rational(value)})
    return EXIT_OK


def cmd_action(args, cfg: CliConfig) -> int:
    q = e_lambda_basis(cfg.lam, cfg.order)
    result = act(_functional(args.u, cfg), _x_series(args.p, cfg, q), q)
    _emit(cfg, str(result), result.to_json())
    return EXIT_OK


def cmd_coproduct(args, cfg: CliConfig) -> int:
    table = coproduct_matrix(args.n, cfg.lam, cfg.order)
    terms = []
    for a, row in enumerate(table):
        for b, c in enumerate(row):
            if c:
                head = "" if c == 1 else f"{format_rational(c)}*"
                terms.append(f"{head}q{a} (x) q{b}")
    payload = {
        "n": args.n,
        "lambda": format_rational(cfg.lam),
        "order": cfg.order,
        "table": [[format_rational(c) for c in row] for row in table],
    }
    _emit(cfg, " + ".join(terms), payload)
    return EXIT_OK


# -- verification ------------------------------------------------------------


def _check_basis(args, cfg: CliConfig) -> PseudoBasis:
    if getattr(args, "monomial", False):
        return PseudoBasis.monomials("x", cfg.order, cfg.lam)
    if getattr(args, "f", None):
        return associated_sequence(_series(args.f, cfg, "t"), cfg.lam)
    return e_lambda_basis(cfg.lam, cfg.order)


CHECKS: dict[str, Callable[[argparse.Namespace, CliConfig], verify.VerifyReport]] = {
    "baxter-axiom": lambda a, c: verify.verify_baxter_axiom(c.lam, c.order, a.trials, c.seed, a.op),
    "divided-power": lambda a, c: verify.verify_divided_power(tau_basis(_series(a.f, c, "t"), c.lam), c.lam),
    "binomial": lambda a, c: verify.verify_lambda_binomial(_check_basis(a, c), c.lam),
    "symmetry": lambda a, c: verify.verify_binomial_symmetry(_check_basis(a, c), c.lam),
    "pairing-product": lambda a, c: verify.verify_pairing_product(_check_basis(a, c), c.lam, a.trials, c.seed),
    "shift-invariance": lambda a, c: verify.verify_shift_invariance(c.lam, c.order),
    "eqinv": lambda a, c: verify.check_identity_eqinv(a.max, a.max, a.max, a.max),
    "zeilberger": lambda a, c: verify.check_zeilberger_recurrence(a.side, a.max, a.max, a.max, a.max_w, a.perturb),
    "compatibility": lambda a, c: verify.verify_compatibility(c.lam, c.order),
    "ucl": lambda a, c: verify.verify_theorem_ucl(_series(a.f, c, "t"), c.lam, trials=a.trials, seed=c.seed),
}

# what `verify all` runs when a check has no flags of its own
ALL_DEFAULTS = {
    "trials": 20,
    "op": "P",
    "f": "t",
    "monomial": False,
    "max": None,
    "side": "left",
    "max_w": 8,
    "perturb": False,
}


def _print_reports(cfg: CliConfig, reports: Sequence[verify.VerifyReport]) -> int:
    if cfg.format == "json":
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(str(r) for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_verify(args, cfg: CliConfig) -> int:
    if args.check != "all":
        return _print_reports(cfg, [CHECKS[args.check](args, cfg)])
    merged = argparse.Namespace(**{**ALL_DEFAULTS, **{k: v for k, v in vars(args).items() if v is not None}})
    if merged.max is None:
        merged.max = 10
    names = sorted(CHECKS)
    with ThreadPoolExecutor() as pool:
        futures = {name: pool.submit(CHECKS[name], merged, cfg) for name in names}
        reports = [futures[name].result() for name in names]
    return _print_reports(cfg, reports)


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambda-umbral", description="Exact lambda-umbral calculus.")
    _global_flags(parser, defaults=True)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, defaults=False)

    p = sub.add_parser("product", parents=[common], help="product in the free Baxter algebra")
    p.add_argument("a", help="element such as u3 or 2*u1+u2")
    p.add_argument("b")
    p.set_defaults(handler=cmd_product)

    p = sub.add_parser("tau", parents=[common], help="rows tau_n(f)")
    p.add_argument("--f", required=True, help="delta series in t")
    p.add_argument("--row", type=int)
    p.set_defaults(handler=cmd_tau)

    p = sub.add_parser("assoc", parents=[common], help="associated sequence of a delta series")
    p.add_argument("--f", required=True, help="delta series in t")
    p.set_defaults(handler=cmd_assoc)

    p = sub.add_parser("pair", parents=[common], help="evaluate a pairing")
    p.add_argument("--u", required=True, help="functional: u-combination or polynomial in t")
    p.add_argument("--p", required=True, help="series: q-combination or expression in x")
    p.add_argument("--mode", choices=("lambda", "classical"), default="lambda")
    p.set_defaults(handler=cmd_pair)

    p = sub.add_parser("action", parents=[common], help="apply a functional to a series")
    p.add_argument("--u", required=True, help="functional: u-combination or polynomial in t")
    p.add_argument("--p", required=True, help="series: q-combination or expression in x")
    p.set_defaults(handler=cmd_action)

    p = sub.add_parser("coproduct", parents=[common], help="coproduct of q_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_coproduct)

    p = sub.add_parser("verify", help="run an identity check")
    checks = p.add_subparsers(dest="check", required=True)
    p.set_defaults(handler=cmd_verify)

    def check(name: str, help: str) -> argparse.ArgumentParser:
        return checks.add_parser(name, parents=[common], help=help)

    c = check("baxter-axiom", "the Baxter axiom on random pairs")
    c.add_argument("--op", choices=sorted(verify.OPERATORS), default="P")
    c.add_argument("--trials", type=int, default=50)

    c = check("divided-power", "divided-power table for tau_n(f)")
    c.add_argument("--f", default="t")

    for name, help in (("binomial", "lambda-binomial type"), ("symmetry", "the two binomial forms agree")):
        c = check(name, help)
        c.add_argument("--f", help="use the associated sequence of f (default: e_lambda powers)")
        c.add_argument("--monomial", action="store_true", help="use x^n (negative control when lambda != 0)")

    c = check("pairing-product", "pairing of a product")
    c.add_argument("--f")
    c.add_argument("--monomial", action="store_true")
    c.add_argument("--trials", type=int, default=20)

    check("shift-invariance", "u_k commutes with the shift")

    c = check("eqinv", "triple-binomial identity on a box")
    c.add_argument("--max", type=int, default=12)

    c = check("zeilberger", "recurrence annihilating the identity")
    c.add_argument("--side", choices=("left", "right"), default="left")
    c.add_argument("--max", type=int, default=10)
    c.add_argument("--max-w", type=int, default=8)
    c.add_argument("--perturb", action="store_true", help="negative control: add 1 to F")

    check("compatibility", "classical pairing of tau_n(t) with e_lambda^k")

    c = check("ucl", "characterization of lambda-binomial sequences")
    c.add_argument("--f", default="t")
    c.add_argument("--trials", type=int, default=20)

    c = check("all", "every check, aggregated by name")
    c.add_argument("--f", default=None)
    c.add_argument("--max", type=int, default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.handler(args, cfg)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
