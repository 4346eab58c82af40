"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | IDENT | "(" expr ")"

Division is accepted only by nonzero constants, which covers rational
literals such as ``3/4``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from .poly import MultiPoly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class UnknownVariableError(PolySyntaxError):
    """An identifier that is not a variable of the ring."""


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), start))
        else:
            toks.append(_Tok("op", m.group(3), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, self.text, tok.pos)

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek().kind == "op" and self.peek().value in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.value == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division only by a nonzero constant", op)
                acc = acc / rhs
        return acc

    def unary(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok.value == "-" else inner
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value in ("^", "**"):
            self.take()
            exp = self.peek()
            if exp.kind != "int":
                self.error("exponent must be a non-negative integer literal")
            self.take()
            return base ** int(exp.value)
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok.kind == "int":
            return MultiPoly.const(self.ring, int(tok.value))
        if tok.kind == "name":
            if tok.value not in self.ring:
                raise UnknownVariableError(f"unknown variable {tok.value!r}", self.text, tok.pos)
            return MultiPoly.var(self.ring, tok.value)
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr()
            close = self.take()
            if not (close.kind == "op" and close.value == ")"):
                self.error("expected ')'", close)
            return inner
        if tok.kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {tok.value!r}", tok)
        raise AssertionError  # unreachable


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse ``text`` into an expanded polynomial over ``ring``."""
    p = _Parser(text, ring)
    if p.peek().kind == "end":
        p.error("empty expression")
    result = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected token {p.peek().value!r}")
    return result
