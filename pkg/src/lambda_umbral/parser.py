"""Recursive-descent parser for series expressions such as ``exp(t)-1``.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)*
    atom    := INT | VAR | FUNC '(' expr ')' | '(' expr ')'

``/`` is always division. Dividing two literals, or negating one, folds into
a single rational literal, which is how ``1/2`` becomes a coefficient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .series import (
    VARIABLES,
    Series,
    SeriesError,
    series_exp,
    series_log,
    series_reciprocal,
)

FUNCTIONS = ("exp", "log")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Apply:
    func: str
    arg: "Expr"


Expr = Union[Lit, Var, Neg, BinOp, Pow, Apply]

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass
class _Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            tokens.append(_Token("int", m.group(1), start))
        elif m.group(2):
            tokens.append(_Token("name", m.group(2), start))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ParseError(f"unexpected character {m.group(3)!r}", start)
            tokens.append(_Token("op", m.group(3), start))
        pos = m.end()
        if pos >= len(text) or not m.group(0):
            break
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variable: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variable = variable

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(f"expected {text!r}", self.tok.offset)
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            right = self.unary()
            if op == "/" and isinstance(left, Lit) and isinstance(right, Lit) and right.value != 0:
                left = Lit(left.value / right.value)
            else:
                left = BinOp(op, left, right)
        return left

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            operand = self.unary()
            return Lit(-operand.value) if isinstance(operand, Lit) else Neg(operand)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        while self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            if self.tok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", self.tok.offset)
            base = Pow(base, int(self.advance().text))
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Lit(Fraction(int(t.text)))
        if t.kind == "name":
            self.advance()
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Apply(t.text, arg)
            if t.text == self.variable:
                return Var(t.text)
            if t.text in VARIABLES:
                raise ParseError(f"wrong variable {t.text!r} (expected {self.variable!r})", t.offset)
            raise ParseError(f"unknown identifier {t.text!r}", t.offset)
        if t.kind == "op" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.offset)
        raise ParseError(f"unexpected {t.text!r}", t.offset)


def parse(text: str, variable: str = "t") -> Expr:
    if variable not in VARIABLES:
        raise ValueError(f"variable must be one of {VARIABLES}")
    return _Parser(text, variable).parse()


# binding strength used when rendering
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _lit_text(q: Fraction) -> str:
    return str(q)


def render(e: Expr) -> str:
    """Text that parses back to the same tree."""
    return _render(e, 0)


def _render(e: Expr, ctx: int) -> str:
    # ctx: 0 top / additive-left, 1 additive-right or multiplicative-left,
    # 2 multiplicative-right or unary operand, 3 power base
    if isinstance(e, Lit):
        s = _lit_text(e.value)
        simple = e.value.denominator == 1 and e.value >= 0
        return s if simple or ctx == 0 else f"({s})"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Apply):
        return f"{e.func}({_render(e.arg, 0)})"
    if isinstance(e, Pow):
        return f"{_render(e.base, 3)}^{e.exponent}"
    if isinstance(e, Neg):
        s = "-" + _render(e.operand, 2)
        return s if ctx <= 1 else f"({s})"
    prec = _PREC[e.op]
    if prec == 1:
        s = f"{_render(e.left, 0)} {e.op} {_render(e.right, 1 if e.op == '+' else 2)}"
        return s if ctx == 0 else f"({s})"
    s = f"{_render(e.left, 1)}{e.op}{_render(e.right, 2)}"
    return s if ctx <= 1 else f"({s})"


def evaluate(e: Expr, order: int, variable: str = "t") -> Series:
    """Evaluate into a series truncated at ``order``."""
    if isinstance(e, Lit):
        return Series.constant(variable, order, e.value)
    if isinstance(e, Var):
        return Series.monomial(e.name, order, 1)
    if isinstance(e, Neg):
        return -evaluate(e.operand, order, variable)
    if isinstance(e, Pow):
        return evaluate(e.base, order, variable) ** e.exponent
    if isinstance(e, Apply):
        arg = evaluate(e.arg, order, variable)
        return series_exp(arg) if e.func == "exp" else series_log(arg)
    left = evaluate(e.left, order, variable)
    right = evaluate(e.right, order, variable)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if right.coeffs[0] == 0:
        raise SeriesError("division by a series with zero constant term")
    return left * series_reciprocal(right)


def parse_series(text: str, order: int, variable: str = "t") -> Series:
    return evaluate(parse(text, variable), order, variable)
