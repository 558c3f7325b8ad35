"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' natural)?
    base   := variable | rational | '(' expr ')'

Variables are single capital letters; rationals are ``a`` or ``a/b`` with
``b > 0``.  A leading minus is accepted so that printed polynomials parse
back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exact_arith import QQ, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        for i in range(pos, start):
            if text[i] == "\n":
                line, line_start = line + 1, i + 1
        col = start - line_start + 1
        number, name, sym = m.groups()
        if number is not None:
            tokens.append(("num", number, line, col))
        elif name is not None:
            tokens.append(("var", name, line, col))
        elif sym is not None:
            tokens.append(("sym", sym, line, col))
        pos = m.end()
    end_col = len(text) - line_start + 1
    tokens.append(("end", "", line, end_col))
    return tokens


class _Parser:
    def __init__(self, text, domain, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.domain = domain
        self.variables = variables

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, sym):
        tok = self.take()
        if tok[0] != "sym" or tok[1] != sym:
            self.fail(f"expected {sym!r}, found {tok[1] or 'end of input'!r}", tok)

    def expr(self):
        negate = False
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "-":
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] == "*":
                self.take()
                value = value * self.factor()
            else:
                return value

    def factor(self):
        value = self.base()
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "num" or "/" in exp[1]:
                self.fail("exponent must be a non-negative integer", exp)
            value = value ** int(exp[1])
        return value

    def base(self):
        tok = self.take()
        kind, text = tok[0], tok[1]
        if kind == "num":
            num = Fraction(text)
            if "/" in text and int(text.split("/")[1]) == 0:
                self.fail("zero denominator", tok)
            return Polynomial.constant(self.domain(num), self.domain)
        if kind == "var":
            if len(text) != 1 or not text.isupper():
                self.fail(f"variables are single capital letters, got {text!r}", tok)
            if self.variables is not None and text not in self.variables:
                self.fail(f"unknown variable {text!r}", tok)
            return Polynomial.var(text, self.domain)
        if kind == "sym" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        self.fail(f"unexpected {text or 'end of input'!r}", tok)


def parse_poly_expr(text, domain=QQ, variables=None):
    """Parse ``text`` into an exact :class:`Polynomial` over ``domain``.

    ``variables`` optionally restricts the admissible variable names.
    """
    parser = _Parser(text, domain, variables)
    value = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        parser.fail(f"unexpected {tok[1]!r}", tok)
    return value


def format_poly(p):
    """Deterministic printer whose output :func:`parse_poly_expr` reads back."""
    return str(p)
