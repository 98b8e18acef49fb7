"""Tokenizer and parser for algebra expressions.

Grammar (loosest binding first)::

    sum     := tensor (('+' | '-') tensor)*
    tensor  := product ('(x)' product)*
    product := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := NUMBER | NAME | '(' sum ')'

``(x)`` is always the tensor separator, so a parenthesised lone generator
called ``x`` has to be written with inner spaces: ``( x )``.
"""

from __future__ import annotations

import re
from fractions import Fraction

TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<tensor>\(x\))
  | (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[-+*^(){};,=])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Syntax or semantic error with a 1-based source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text: str, line: int = 1, col: int = 1) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, text: str):
        t = self.peek()
        if t.text == text and t.kind in ("op", "name", "tensor"):
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            shown = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", t.line, t.col)
        return self.next()

    def expect_name(self) -> Token:
        t = self.peek()
        if t.kind != "name":
            shown = t.text or "end of input"
            raise ParseError(f"expected a name, found {shown!r}", t.line, t.col)
        return self.next()


# AST nodes are plain tuples; the last two fields of 'gen' are its position.


def parse_expr(ts: TokenStream):
    node = _parse_tensor(ts)
    while True:
        t = ts.peek()
        if t.text == "+" and t.kind == "op":
            ts.next()
            node = ("add", node, _parse_tensor(ts))
        elif t.text == "-" and t.kind == "op":
            ts.next()
            node = ("sub", node, _parse_tensor(ts))
        else:
            return node


def _parse_tensor(ts):
    legs = [_parse_product(ts)]
    while ts.peek().kind == "tensor":
        ts.next()
        legs.append(_parse_product(ts))
    return legs[0] if len(legs) == 1 else ("tensor", legs)


def _parse_product(ts):
    node = _parse_unary(ts)
    while ts.peek().text == "*":
        ts.next()
        node = ("mul", node, _parse_unary(ts))
    return node


def _parse_unary(ts):
    if ts.peek().text == "-" and ts.peek().kind == "op":
        ts.next()
        return ("neg", _parse_unary(ts))
    return _parse_power(ts)


def _parse_power(ts):
    node = _parse_atom(ts)
    if ts.peek().text == "^":
        ts.next()
        sign = 1
        if ts.peek().text == "-":
            ts.next()
            sign = -1
        t = ts.peek()
        if t.kind != "number" or "/" in t.text:
            raise ParseError("exponent must be an integer", t.line, t.col)
        ts.next()
        node = ("pow", node, sign * int(t.text), t.line, t.col)
    return node


def _parse_atom(ts):
    t = ts.peek()
    if t.kind == "number":
        ts.next()
        return ("num", Fraction(t.text))
    if t.kind == "name":
        ts.next()
        return ("gen", t.text, t.line, t.col)
    if t.text == "(":
        ts.next()
        node = parse_expr(ts)
        ts.expect(")")
        return node
    shown = t.text or "end of input"
    raise ParseError(f"unexpected {shown!r} in expression", t.line, t.col)


def first_position(node):
    """Source position of the first generator in ``node`` (or ``(0, 0)``)."""
    if node[0] == "gen":
        return node[2], node[3]
    for child in node[1:]:
        if isinstance(child, tuple):
            pos = first_position(child)
            if pos != (0, 0):
                return pos
        elif isinstance(child, list):
            for c in child:
                pos = first_position(c)
                if pos != (0, 0):
                    return pos
    return 0, 0
