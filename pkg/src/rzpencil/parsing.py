"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := NUMBER | VAR | 'sqrt' '(' INT ')' | 'i' | '(' expr ')'

Variables are ``x<j>``; ``x, y, z`` and ``a, b, c`` alias the first three
variables when there are at most three.  Division is only allowed by
nonzero constants.  The imaginary unit ``i`` is accepted only when the
caller asks for it (pencil entries).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, ParseError
from .numbers import I, sqrt_of

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()])"
    r")"
)

_ALIASES = {"x": 0, "y": 1, "z": 2, "a": 0, "b": 1, "c": 2}


def tokenize(text: str) -> list[tuple[str, str, int]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _index_of(name: str):
    m = re.fullmatch(r"x(\d+)", name)
    return int(m.group(1)) if m else None


def detect_base(text: str) -> int:
    """Naming base of indexed variables: 0 if ``x0`` occurs, else 1."""
    for kind, val, _ in tokenize(text):
        if kind == "name" and _index_of(val) == 0:
            return 0
    return 1


def max_variable(text: str, base: int) -> int:
    """Number of variables implied by the highest index used in ``text``."""
    hi = 0
    for kind, val, _ in tokenize(text):
        if kind == "name":
            j = _index_of(val)
            if j is not None:
                hi = max(hi, j - base + 1)
            elif val in _ALIASES:
                hi = max(hi, _ALIASES[val] + 1)
    return hi


class _Parser:
    def __init__(self, text, nvars, base, allow_imag, make_const, make_var):
        self.toks = tokenize(text)
        self.k = 0
        self.nvars = nvars
        self.base = base
        self.allow_imag = allow_imag
        self.const = make_const
        self.var = make_var

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, val):
        kind, v, pos = self.take()
        if v != val:
            raise ParseError(f"expected {val!r}, found {v or 'end of input'!r}", pos)

    def parse(self):
        value = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.peek()[2]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.degree > 0:
                    raise ParseError("division by a non-constant", pos)
                c = rhs.const_term
                if c == 0:
                    raise ParseError("division by zero", pos)
                value = value * (1 / c)
        return value

    def unary(self):
        op = self.peek()[1]
        if op in ("+", "-") and self.peek()[0] == "op":
            self.take()
            v = self.unary()
            return -v if op == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, v, pos = self.take()
            if kind != "num" or not v.isdigit():
                raise ParseError("exponent must be a nonnegative integer", pos)
            base = base ** int(v)
        return base

    def atom(self):
        kind, v, pos = self.take()
        if kind == "num":
            return self.const(Fraction(v))
        if kind == "op" and v == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "name":
            if v == "sqrt":
                self.expect("(")
                k2, arg, apos = self.take()
                if k2 != "num" or not arg.isdigit():
                    raise ParseError("sqrt() takes a positive integer literal", apos)
                self.expect(")")
                try:
                    return self.const(sqrt_of(int(arg)))
                except DomainError as exc:
                    raise ParseError(str(exc), apos) from None
            if v == "i":
                if not self.allow_imag:
                    raise ParseError("imaginary unit not allowed here", pos)
                return self.const(I)
            j = _index_of(v)
            if j is not None:
                idx = j - self.base
                if not 0 <= idx < self.nvars:
                    raise ParseError(f"unknown variable {v!r}", pos)
                return self.var(idx)
            if v in _ALIASES and self.nvars <= 3 and _ALIASES[v] < self.nvars:
                return self.var(_ALIASES[v])
            raise ParseError(f"unknown variable {v!r}", pos)
        raise ParseError(f"unexpected token {v or 'end of input'!r}", pos)


def parse_expression(text, nvars, base, allow_imag, make_const, make_var):
    return _Parser(text, nvars, base, allow_imag, make_const, make_var).parse()
