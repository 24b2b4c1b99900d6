"""Tokenizer and Pratt parser for the calculator language.

Grammar, loosest binding first::

    expr     := expr ('+' | '-') expr
              | expr '*' expr
              | '-' expr
              | 'D^' INT expr          # derivative of order n
              | expr '|' interval      # restriction
              | atom ('^' INT)?
    atom     := NUMBER | NAME | NAME '(' args ')' | '(' expr ')'
              | 'glue' '{' interval ':' expr (',' interval ':' expr)* '}'
              | 'pw' '{' interval ':' expr (',' interval ':' expr)* '}'
    interval := '(' signed ',' signed ')' | 'empty'

Restriction binds tightest, then ``D^n``, then unary minus, then ``*``,
then ``+`` and ``-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = ["ParseError", "Node", "tokenize", "parse"]


class ParseError(ValueError):
    """Malformed calculator input; ``pos`` is the character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


@dataclass(frozen=True)
class Node:
    """A parse tree node: ``op`` names the construct, ``args`` holds children or payload."""

    op: str
    args: tuple
    pos: int = 0

    def __str__(self):
        return f"{self.op}({', '.join(map(str, self.args))})"


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<deriv>D\^)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^|(),:{}∅])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list:
    out, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), i))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


# binding powers
_BP = {"+": 10, "-": 10, "*": 20, "|": 50, "^": 60}
_UNARY_MINUS = 30
_DERIV = 40


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def integer(self) -> int:
        t = self.next()
        if t.kind != "num" or "/" in t.text:
            raise ParseError(f"expected an integer, found {t.text or 'end of input'!r}", t.pos)
        return int(t.text)

    def signed(self) -> Fraction:
        neg = False
        if self.tok.text == "-":
            self.next()
            neg = True
        t = self.next()
        if t.kind != "num":
            raise ParseError(f"expected a number, found {t.text or 'end of input'!r}", t.pos)
        q = Fraction(t.text)
        return -q if neg else q

    def interval(self) -> Node:
        t = self.tok
        if t.text in ("empty", "∅"):
            self.next()
            return Node("interval", (None, None), t.pos)
        self.expect("(")
        a = self.signed()
        self.expect(",")
        b = self.signed()
        self.expect(")")
        if not a < b:
            raise ParseError(f"empty interval ({a},{b})", t.pos)
        return Node("interval", (a, b), t.pos)

    def expr(self, rbp: int = 0) -> Node:
        left = self.nud(self.next())
        while True:
            t = self.tok
            bp = _BP.get(t.text, 0) if t.kind == "op" else 0
            if bp <= rbp:
                return left
            self.next()
            left = self.led(t, left)

    def nud(self, t: Token) -> Node:
        if t.kind == "num":
            return Node("num", (Fraction(t.text),), t.pos)
        if t.kind == "deriv":
            n = self.integer()
            return Node("D", (n, self.expr(_DERIV)), t.pos)
        if t.text == "-":
            return Node("neg", (self.expr(_UNARY_MINUS),), t.pos)
        if t.text == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            if t.text in ("glue", "pw") and self.tok.text == "{":
                return Node(t.text, self.table(), t.pos)
            if self.tok.text == "(":
                self.next()
                args = [] if self.tok.text == ")" else [self.expr()]
                while self.tok.text == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                return Node("call", (t.text, tuple(args)), t.pos)
            return Node("name", (t.text,), t.pos)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def led(self, t: Token, left: Node) -> Node:
        if t.text in "+-":
            return Node("add" if t.text == "+" else "sub", (left, self.expr(_BP[t.text])), t.pos)
        if t.text == "*":
            return Node("mul", (left, self.expr(_BP["*"])), t.pos)
        if t.text == "|":
            return Node("restrict", (left, self.interval()), t.pos)
        if t.text == "^":
            return Node("pow", (left, self.integer()), t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)

    def table(self) -> tuple:
        self.expect("{")
        rows = []
        while True:
            iv = self.interval()
            self.expect(":")
            rows.append((iv, self.expr()))
            if self.tok.text == ",":
                self.next()
                continue
            self.expect("}")
            return tuple(rows)


def parse(text: str) -> Node:
    """Parse ``text`` into a :class:`Node` tree; raises :class:`ParseError`."""
    p = _Parser(text)
    if p.tok.kind == "end":
        raise ParseError("empty expression", 0)
    e = p.expr()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return e


def parse_interval_text(text: str) -> Optional[tuple]:
    """``(a, b)`` from ``"(a,b)"``; ``None`` for the empty region."""
    p = _Parser(text)
    iv = p.interval()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return None if iv.args[0] is None else iv.args
