"""Parser for polynomial literals.

Grammar shared with the session format: variables are identifiers (dots are
allowed inside names so renamed product variables round-trip), ``^`` raises to
a nonnegative integer power, ``*`` may be written or implied by adjacency,
and coefficients are integers or ``a/b`` rationals.  Example::

    x^2*y - 3/2*y + 1
"""

from __future__ import annotations

from ..errors import ParseError, UnknownVariable
from .poly import Ambient, Poly

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789.")


def tokenize(text: str, line: int | None = None, col_offset: int = 0):
    """Yield (kind, value, column) tokens; kinds: int, ident, op."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1 + col_offset
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], col))
            i = j
        elif ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(("ident", text[i:j], col))
            i = j
        elif ch in "+-*/^()[],=":
            tokens.append(("op", ch, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


class _ExprParser:
    """Recursive-descent parser over a token list."""

    def __init__(self, tokens, ambient: Ambient, line=None):
        self.tokens = tokens
        self.pos = 0
        self.ambient = ambient
        self.line = line

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line,
                             self.tokens[-1][2] if self.tokens else 1)
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        col = tok[2] if tok else (self.tokens[-1][2] if self.tokens else 1)
        raise ParseError(message, self.line, col)

    def parse(self) -> Poly:
        poly = self.expr()
        if self.peek() is not None:
            self.error(f"trailing input {self.peek()[1]!r}", self.peek())
        return poly

    def expr(self) -> Poly:
        tok = self.peek()
        negate = False
        if tok and tok[1] in "+-" and tok[0] == "op":
            self.next()
            negate = tok[1] == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return acc
            self.next()
            rhs = self.term()
            acc = acc + rhs if tok[1] == "+" else acc - rhs

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok is None:
                return acc
            if tok[0] == "op" and tok[1] == "*":
                self.next()
                acc = acc * self.factor()
            elif tok[0] in ("int", "ident") or (tok[0] == "op" and tok[1] == "("):
                acc = acc * self.factor()  # implicit multiplication
            else:
                return acc

    def factor(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.next()
            etok = self.next()
            if etok[0] != "int":
                self.error("exponent must be a nonnegative integer", etok)
            base = base ** int(etok[1])
        return base

    def atom(self) -> Poly:
        tok = self.next()
        kind, value, _ = tok
        if kind == "op" and value == "-":
            return -self.atom()
        if kind == "op" and value == "(":
            inner = self.expr()
            closing = self.next()
            if closing[:2] != ("op", ")"):
                self.error("expected ')'", closing)
            return inner
        if kind == "int":
            num = int(value)
            nxt = self.peek()
            if nxt and nxt[:2] == ("op", "/"):
                self.next()
                dtok = self.next()
                if dtok[0] != "int":
                    self.error("expected integer denominator", dtok)
                c = self.ambient.field.from_fraction(num, int(dtok[1]))
            else:
                c = self.ambient.field.from_int(num)
            return Poly.const(self.ambient, c)
        if kind == "ident":
            try:
                return Poly.variable(self.ambient, value)
            except UnknownVariable:
                where = f" (line {self.line}, col {tok[2]})" if self.line else ""
                raise UnknownVariable(
                    f"unknown variable {value!r}{where}; ambient has {self.ambient.vars}"
                ) from None
        self.error(f"unexpected token {value!r}", tok)


def parse_poly(text: str, ambient: Ambient, line: int | None = None,
               col_offset: int = 0) -> Poly:
    tokens = tokenize(text, line, col_offset)
    if not tokens:
        raise ParseError("empty polynomial literal", line, 1 + col_offset)
    return _ExprParser(tokens, ambient, line).parse()
