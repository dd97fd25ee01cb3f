"""Text and JSON forms of algebra elements.

Text form: terms in descending order under the chosen monomial order,
factors ``d[i,j]^k`` joined by ``*`` in ascending index order, compound
coefficients parenthesized, e.g. ``d[1,1]*d[2,2] + (q-1)*d[1,2]*d[2,1]``.

JSON form::

    {"n": 2, "order": "paper-lex",
     "terms": [{"coeff": {"num": [-1, 1], "den": [1]}, "exp": [[0, 1], [1, 0]]}]}

Rationals that are not integers are written as strings ``"p/q"``.
"""

from __future__ import annotations

from .parsing import ExpressionSyntaxError, IndexOutOfRange, parse_with
from .pbw import PAPER_LEX, DqAlgebra, OrderSpec, PBWElement
from .scalarfield import InversionOfZero, Scalar

__all__ = ["parse_element", "format_element", "element_to_json", "element_from_json"]


class _ElementBuilder:
    def __init__(self, algebra: DqAlgebra):
        self.alg = algebra

    def const(self, c):
        return self.alg.scalar(Scalar.from_rational(c))

    def q(self):
        return self.alg.scalar(self.alg.field.q())

    def gen(self, i, j, pos):
        n = self.alg.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexOutOfRange(f"generator d[{i},{j}] out of range for n={n} (position {pos})")
        return self.alg.gen(i, j)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        one = self.alg.one_monomial
        if any(m != one for m in b.terms):
            raise ExpressionSyntaxError("division by a non-scalar", pos, ("scalar divisor",))
        c = b.terms.get(one)
        if c is None:
            raise InversionOfZero(f"division by zero at position {pos}")
        return a.scale(c.inverse())

    def pow(self, a, k):
        return a**k

    def neg(self, a):
        return -a


def parse_element(src: str, algebra: DqAlgebra) -> PBWElement:
    """Parse ``src`` and return its PBW normal form in ``algebra``.

    Generator products may appear in any order; multiplication is the
    algebra product, so ``d[2,2]*d[1,1]`` normalizes via the relations.
    """
    return parse_with(src, _ElementBuilder(algebra))


def _coeff_text(c: Scalar) -> str:
    return f"({c})" if c.needs_parens() else str(c)


def format_element(f: PBWElement, order: OrderSpec = PAPER_LEX) -> str:
    if not f.terms:
        return "0"
    alg = f.algebra
    out = ""
    for k, (m, c) in enumerate(f.sorted_terms(order)):
        neg = c.is_negative()
        a = -c if neg else c
        mono = alg.format_monomial(m)
        if not any(m):
            body = _coeff_text(a)
        elif a.is_one():
            body = mono
        else:
            body = _coeff_text(a) + "*" + mono
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def element_to_json(f: PBWElement, order: OrderSpec = PAPER_LEX) -> dict:
    n = f.algebra.n
    terms = []
    for m, c in f.sorted_terms(order):
        terms.append({"coeff": c.to_json(), "exp": [list(m[r * n : (r + 1) * n]) for r in range(n)]})
    return {"n": n, "order": order.name(), "terms": terms}


def element_from_json(obj: dict, algebra: DqAlgebra) -> PBWElement:
    if obj["n"] != algebra.n:
        raise ValueError(f"element is for n={obj['n']}, algebra has n={algebra.n}")
    terms = {}
    for t in obj["terms"]:
        m = tuple(x for row in t["exp"] for x in row)
        terms[m] = algebra.field.coerce(Scalar.from_json(t["coeff"]))
    return PBWElement(algebra, terms)
