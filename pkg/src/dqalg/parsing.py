"""Recursive-descent parser for scalar and algebra-element expressions.

Accepted syntax (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' uint]
    atom   := uint | 'q' | 'd' '[' uint ',' uint ']' | '(' expr ')'

This is a superset of the documented element grammar.  The parser is
generic over a *builder* that gives meaning to constants, ``q``, generators
and the arithmetic operators, so the same code parses plain scalars and
elements of the algebra.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalarfield import FieldConfig, InversionOfZero, Scalar

__all__ = ["ExpressionSyntaxError", "IndexOutOfRange", "parse_with", "parse_scalar", "split_top_level"]


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, expected: tuple[str, ...] = ()):
        self.pos = pos
        self.expected = expected
        detail = f" (expected {' or '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {pos}{detail}")


class IndexOutOfRange(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(d)|([-+*/^()\[\],]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {src[start]!r}", start)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("q", "q", start))
        elif m.group(3):
            toks.append(("d", "d", start))
        else:
            toks.append((m.group(4), m.group(4), start))
        pos = m.end()
    toks.append(("eof", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, builder):
        self.toks = _tokenize(src)
        self.i = 0
        self.b = builder

    @property
    def cur(self):
        return self.toks[self.i]

    def take(self, kind: str, expected: tuple[str, ...] | None = None):
        tok = self.cur
        if tok[0] != kind:
            raise ExpressionSyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], expected or (repr(kind),))
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.cur[0] != "eof":
            raise ExpressionSyntaxError(f"unexpected {self.cur[1]!r}", self.cur[2], ("'+'", "'-'", "'*'", "end of input"))
        return val

    def expr(self):
        neg = False
        if self.cur[0] in ("+", "-"):
            neg = self.cur[0] == "-"
            self.i += 1
        val = self.term()
        if neg:
            val = self.b.neg(val)
        while self.cur[0] in ("+", "-"):
            op = self.cur[0]
            self.i += 1
            rhs = self.term()
            val = self.b.add(val, rhs) if op == "+" else self.b.sub(val, rhs)
        return val

    def term(self):
        val = self.unary()
        while self.cur[0] in ("*", "/"):
            op, _, pos = self.cur
            self.i += 1
            rhs = self.unary()
            val = self.b.mul(val, rhs) if op == "*" else self.b.div(val, rhs, pos)
        return val

    def unary(self):
        if self.cur[0] == "-":
            self.i += 1
            return self.b.neg(self.unary())
        return self.power()

    def power(self):
        val = self.atom()
        if self.cur[0] == "^":
            self.i += 1
            k = int(self.take("int", ("non-negative integer exponent",))[1])
            val = self.b.pow(val, k)
        return val

    def atom(self):
        kind, text, pos = self.cur
        if kind == "int":
            self.i += 1
            return self.b.const(Fraction(int(text)))
        if kind == "q":
            self.i += 1
            return self.b.q()
        if kind == "d":
            self.i += 1
            self.take("[", ("'['",))
            i = int(self.take("int", ("row index",))[1])
            self.take(",", ("','",))
            j = int(self.take("int", ("column index",))[1])
            self.take("]", ("']'",))
            return self.b.gen(i, j, pos)
        if kind == "(":
            self.i += 1
            val = self.expr()
            self.take(")", ("')'",))
            return val
        raise ExpressionSyntaxError(
            f"unexpected {text or 'end of input'!r}", pos, ("integer", "'q'", "'d['", "'('", "'-'")
        )


def parse_with(src: str, builder):
    return _Parser(src, builder).parse()


class _ScalarBuilder:
    def __init__(self, field: FieldConfig):
        self.field = field

    def const(self, c):
        return Scalar.from_rational(c)

    def q(self):
        return self.field.q()

    def gen(self, i, j, pos):
        raise ExpressionSyntaxError("generator not allowed in a scalar", pos, ("integer", "'q'", "'('"))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if b.is_zero():
            raise InversionOfZero(f"division by zero at position {pos}")
        return a / b

    def pow(self, a, k):
        return a**k

    def neg(self, a):
        return -a


def parse_scalar(src: str, field: FieldConfig) -> Scalar:
    return parse_with(src, _ScalarBuilder(field))


def split_top_level(src: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside brackets/parentheses (``d[1,2]`` stays whole)."""
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(src):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(src[start:k])
            start = k + 1
    parts.append(src[start:])
    return [p.strip() for p in parts if p.strip()]
