"""Parser for element expressions.

Grammar (whitespace insignificant)::

    expr    := product ('+' product)*
    product := factor ('*' factor)*
    factor  := INT | X(INT) | Y(INT) | H(INT) | mu(INT [, INT])
             | B(BITS; pairs) | E(pairs) | '(' expr ')'
    pairs   := INT ':' INT (',' INT ':' INT)*

The canonical text form of an element parses back to the same element.
"""

from __future__ import annotations

import re

from .hyperalgebra import AlgebraElement, H, X, Y
from .idempotents import PairAJ, TupleAJ, b_element, idempotent, mu

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*(),:;]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, p: int):
        self.tokens = tokenize(text)
        self.i = 0
        self.p = p

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def integer(self) -> int:
        return int(self.take("int")[1])

    def parse(self) -> AlgebraElement:
        e = self.expr()
        self.take("end")
        return e

    def expr(self) -> AlgebraElement:
        e = self.product()
        while self.peek()[:2] == ("op", "+"):
            self.i += 1
            e = e + self.product()
        return e

    def product(self) -> AlgebraElement:
        e = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.i += 1
            e = e * self.factor()
        return e

    def pairs(self) -> TupleAJ:
        out = []
        while True:
            pos = self.peek()[2]
            a = self.integer()
            self.take("op", ":")
            two_j = self.integer()
            try:
                out.append(PairAJ(a, two_j, self.p))
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
            if self.peek()[:2] != ("op", ","):
                return TupleAJ(tuple(out))
            self.i += 1

    def factor(self) -> AlgebraElement:
        kind, value, pos = self.peek()
        p = self.p
        if kind == "int":
            self.i += 1
            return AlgebraElement.scalar(int(value), p)
        if (kind, value) == ("op", "("):
            self.i += 1
            e = self.expr()
            self.take("op", ")")
            return e
        if kind != "name":
            raise ParseError(f"unexpected {value or 'end of input'!r}", pos)
        self.i += 1
        self.take("op", "(")
        if value in ("X", "Y", "H"):
            k = self.integer()
            if k < 0:
                raise ParseError("index must be non-negative", pos)
            e = {"X": X, "Y": Y, "H": H}[value](k, p)
        elif value == "mu":
            a = self.integer()
            r = 1
            if self.peek()[:2] == ("op", ","):
                self.i += 1
                r = self.integer()
                if r < 1:
                    raise ParseError("level r must be positive", pos)
            e = mu(a, r, p)
        elif value == "B":
            bits_tok = self.take("int")
            if set(bits_tok[1]) - {"0", "1"}:
                raise ParseError("eps must be a bit string", bits_tok[2])
            self.take("op", ";")
            tup = self.pairs()
            eps = tuple(int(c) for c in bits_tok[1])
            if len(eps) != tup.r:
                raise ParseError(f"eps has {len(eps)} bits but {tup.r} pairs were given", bits_tok[2])
            e = b_element(eps, tup)
        elif value == "E":
            e = idempotent(self.pairs())
        else:
            raise ParseError(f"unknown symbol {value!r}", pos)
        self.take("op", ")")
        return e


def parse_element(text: str, p: int) -> AlgebraElement:
    return _Parser(text, p).parse()
