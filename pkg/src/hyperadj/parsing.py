"""Parsers for polynomials, field-tower elements and truncated series.

All three share one grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | "(" expr ")" | "O" "(" expr ")"

Numbers are non-negative integers; rationals are written as quotients.
Implicit multiplication (``2x``) is rejected.  ``O(...)`` is only
meaningful in series.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import DivisionByZero, ParseError, UnknownSymbol, UnknownVariable
from .fieldtower import FieldTower, TowerElem
from .laurent import TruncLaurent, series_div
from .polyring import MultiPoly

__all__ = ["parse_poly", "parse_tower_elem", "parse_series", "parse_expr"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", text, i)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(_Tok("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(_Tok("op", op, start))
        i = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def expect(self, op: str) -> _Tok:
        t = self.peek()
        if t.kind != "op" or t.text != op:
            self.error(f"expected {op!r}")
        return self.take()

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            if t.kind in ("num", "name") or t.text == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {t.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            node = ("mul" if tok.text == "*" else "div", node, self.unary(), tok.pos)
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            inner = self.unary()
            return ("neg", inner) if t.text == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            tok = self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().text in "+-":
                sign = -1 if self.take().text == "-" else 1
            if self.peek().kind == "op" and self.peek().text == "(":
                # allow t^(-3)
                self.take()
                if self.peek().kind == "op" and self.peek().text in "+-":
                    sign *= -1 if self.take().text == "-" else 1
                e = self.peek()
                if e.kind != "num":
                    self.error("exponent must be an integer")
                self.take()
                self.expect(")")
            else:
                e = self.peek()
                if e.kind != "num":
                    self.error("exponent must be an integer")
                self.take()
            return ("pow", base, sign * int(e.text), tok.pos)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return ("num", int(t.text))
        if t.kind == "name":
            if t.text == "O" and self.peek().kind == "op" and self.peek().text == "(":
                self.take()
                inner = self.expr()
                self.expect(")")
                return ("big_o", inner, t.pos)
            return ("name", t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "end":
            self.error("unexpected end of input", t)
        self.error(f"unexpected {t.text!r}", t)


def parse_expr(text: str):
    """Parse ``text`` into a nested-tuple syntax tree."""
    return _Parser(text).parse()


# -- polynomials --------------------------------------------------------------

def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse a polynomial over Q in the given variables."""
    variables = tuple(variables)
    tree = parse_expr(text)

    def ev(node) -> MultiPoly:
        tag = node[0]
        if tag == "num":
            return MultiPoly.constant(variables, node[1])
        if tag == "name":
            if node[1] not in variables:
                raise UnknownVariable(f"unknown variable {node[1]!r} at position {node[2]}")
            return MultiPoly.var(variables, node[1])
        if tag == "neg":
            return -ev(node[1])
        if tag == "add":
            return ev(node[1]) + ev(node[2])
        if tag == "sub":
            return ev(node[1]) - ev(node[2])
        if tag == "mul":
            return ev(node[1]) * ev(node[2])
        if tag == "div":
            num, den = ev(node[1]), ev(node[2])
            if not den.is_constant():
                raise ParseError("division by a non-constant polynomial", text, node[3])
            if den.is_zero():
                raise DivisionByZero(f"division by zero at position {node[3]}")
            return num.scale(1 / den.coefficient((0,) * len(variables)))
        if tag == "pow":
            if node[2] < 0:
                raise ParseError("negative exponent in a polynomial", text, node[3])
            return ev(node[1]) ** node[2]
        if tag == "big_o":
            raise ParseError("O(...) is not allowed in a polynomial", text, node[2])
        raise AssertionError(tag)

    return ev(tree)


# -- field-tower elements -----------------------------------------------------

def _tower_eval(tree, tower: FieldTower, text: str, extra=None):
    """Evaluate a tree over ``tower``; ``extra`` handles unknown names / O()."""

    def ev(node):
        tag = node[0]
        if tag == "num":
            return tower.from_rational(node[1])
        if tag == "name":
            if node[1] in tower.symbols:
                return tower.symbol(node[1])
            if extra is not None:
                return extra(node)
            raise UnknownSymbol(f"unknown symbol {node[1]!r} at position {node[2]}")
        if tag == "big_o":
            if extra is not None:
                return extra(node)
            raise ParseError("O(...) is not allowed in a field element", text, node[2])
        if tag == "neg":
            return -ev(node[1])
        if tag == "add":
            return ev(node[1]) + ev(node[2])
        if tag == "sub":
            return ev(node[1]) - ev(node[2])
        if tag == "mul":
            return ev(node[1]) * ev(node[2])
        if tag == "div":
            a, b = ev(node[1]), ev(node[2])
            if isinstance(b, TowerElem):
                if not b:
                    raise DivisionByZero(f"division by zero at position {node[3]}")
                return a * b.inverse()
            if isinstance(a, TowerElem):
                a = TruncLaurent.constant(tower, a)
            return series_div(a, b)
        if tag == "pow":
            return ev(node[1]) ** node[2]
        raise AssertionError(tag)

    return ev(tree)


def parse_tower_elem(text: str, tower: FieldTower) -> TowerElem:
    """Parse an element of ``tower`` (rationals, its symbols, + - * / ^)."""
    return _tower_eval(parse_expr(text), tower, text)


# -- series -------------------------------------------------------------------

def parse_series(text: str, tower: FieldTower, var: str = "t") -> TruncLaurent:
    """Parse ``c_k*t^k + ... + O(t^N)``; without ``O`` the series is exact."""
    tree = parse_expr(text)

    def extra(node):
        if node[0] == "name":
            if node[1] == var:
                return TruncLaurent.monomial(tower, 1, 1)
            raise UnknownSymbol(f"unknown symbol {node[1]!r} at position {node[2]}")
        inner = node[1]
        if inner == ("num", 1):
            return TruncLaurent.zero(tower, 0)
        if inner[0] == "name" and inner[1] == var:
            return TruncLaurent.zero(tower, 1)
        if inner[0] == "pow" and inner[1][0] == "name" and inner[1][1] == var:
            return TruncLaurent.zero(tower, inner[2])
        raise ParseError(f"O(...) must contain a power of {var}", text, node[2])

    value = _tower_eval(tree, tower, text, extra)
    if isinstance(value, TowerElem):
        return TruncLaurent.constant(tower, value)
    return value
