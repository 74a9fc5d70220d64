"""Recursive-descent parser for polynomial expressions.

Grammar:

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*'? factor)*          # adjacent factors multiply
    factor := base ('^' INT)?
    base   := RATIONAL | IDENT | '(' expr ')'
    RATIONAL := INT ('/' INT)?

Exponents must be positive integers.  Identifiers must be declared variable
names.  Errors carry the byte offset of the offending token.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .poly import Polynomial

_TOKEN_CHARS = {"+", "-", "*", "^", "/", "(", ")"}


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("ident", src[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, names: Sequence[str]):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.n = len(names)
        self.index = {name: i for i, name in enumerate(names)}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[0] == "-":
            self.take()
            negate = True
        out = self.term()
        if negate:
            out = -out
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Polynomial:
        out = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                out = out * self.factor()
            elif kind in ("int", "ident", "("):
                out = out * self.factor()
            else:
                return out

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int" or int(tok[1]) < 1:
                raise ParseError("exponent must be a positive integer", tok[2])
            return base ** int(tok[1])
        return base

    def base(self) -> Polynomial:
        tok = self.take()
        kind, text, off = tok
        if kind == "int":
            value = Fraction(int(text))
            if self.peek()[0] == "/":
                self.take()
                den = self.expect("int")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value /= int(den[1])
            return Polynomial.constant(self.n, value)
        if kind == "ident":
            if text not in self.index:
                raise ParseError(f"unknown identifier {text!r}", off)
            return Polynomial.variable(self.n, self.index[text])
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {text!r}", off)


def parse_polynomial(src: str, names: Sequence[str]) -> Polynomial:
    """Parse `src` over the given variable names into canonical form."""
    if len(set(names)) != len(names):
        raise ValueError("variable names must be distinct")
    parser = _Parser(src, names)
    poly = parser.expr()
    end = parser.take()
    if end[0] != "end":
        raise ParseError(f"trailing input {end[1]!r}", end[2])
    return poly
