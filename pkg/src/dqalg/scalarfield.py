"""Exact arithmetic in the coefficient field Q(q).

A :class:`Scalar` is a rational function ``num/den`` in the quantum parameter
``q`` with rational coefficients.  Values are kept in canonical form
(coprime numerator and denominator, monic denominator, zero is ``0/1``) so
equality is plain component comparison.

A :class:`FieldConfig` either leaves ``q`` symbolic or specializes it to a
nonzero rational; in the latter case every scalar is a constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "FieldError",
    "InversionOfZero",
    "ZeroQ",
    "QPoly",
    "Scalar",
    "FieldConfig",
    "SYMBOLIC",
    "scalar_add",
    "scalar_mul",
    "scalar_inv",
]


class FieldError(ArithmeticError):
    pass


class InversionOfZero(FieldError, ZeroDivisionError):
    pass


class ZeroQ(FieldError, ValueError):
    """The quantum parameter was specialized to 0."""


Coeff = Union[int, Fraction]


def _c(x) -> Coeff:
    # ints stay ints (fast path); integral Fractions collapse to int
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _trim(coeffs: Iterable) -> tuple:
    out = [_c(a) for a in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class QPoly:
    """Univariate polynomial over Q in ``q``; coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def constant(cls, c) -> "QPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "QPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lc(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)!r})"

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly._raw(())
        if len(b) == 1:
            c = b[0]
            return QPoly._raw(tuple(_c(x * c) for x in a))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPoly(out)

    def scale(self, c) -> "QPoly":
        return self * QPoly.constant(c)

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise InversionOfZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = Fraction(other.lc)
        quo = [0] * max(len(rem) - db, 0)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            t = _c(c / lb)
            quo[k] = t
            for j, y in enumerate(bc):
                rem[k + j] -= t * y
        return QPoly(quo), QPoly(rem[:db] if db > 0 else [])

    def monic(self) -> "QPoly":
        if self.is_zero() or self.lc == 1:
            return self
        inv = 1 / Fraction(self.lc)
        return QPoly([c * inv for c in self.coeffs])

    def gcd(self, other: "QPoly") -> "QPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _c(acc)

    def content_lcm(self) -> int:
        """Least common multiple of the coefficient denominators."""
        from math import lcm

        out = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                out = lcm(out, c.denominator)
        return out

    def format(self, var: str = "q") -> str:
        """Render with descending powers, e.g. ``2*q^2-q+1``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s0, b0 = parts[0]
        out = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            out += s + b
        return out


_ZERO = QPoly._raw(())
_ONE = QPoly._raw((1,))
_Q = QPoly._raw((0, 1))


class Scalar:
    """Canonical element of Q(q)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: QPoly | Sequence | int | Fraction = 0, den: QPoly | Sequence | int | Fraction = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise InversionOfZero("zero denominator")
        num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: QPoly, den: QPoly) -> "Scalar":
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def q(cls) -> "Scalar":
        return _SQ

    @classmethod
    def from_rational(cls, c) -> "Scalar":
        c = _c(c)
        if c == 0:
            return ZERO
        if c == 1:
            return ONE
        return cls._raw(QPoly._raw((c,)), _ONE)

    @classmethod
    def parse(cls, text: str, field: "FieldConfig | None" = None) -> "Scalar":
        from .parsing import parse_scalar

        return parse_scalar(text, field or SYMBOLIC)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_one(self) -> bool:
        return self.num.coeffs == (1,) and self.den.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.num.coeffs) <= 1 and len(self.den.coeffs) == 1

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs
        if isinstance(other, (int, Rational)):
            return self == Scalar.from_rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    def __add__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        if not self.num.coeffs:
            return other
        if not other.num.coeffs:
            return self
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return Scalar._raw(self.num + other.num, _ONE)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return _as_scalar(other) - self

    def __mul__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return Scalar._raw(self.num * other.num, _ONE)
        # cross-cancel before multiplying to keep degrees small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = self.num.divmod(g1)[0], other.den.divmod(g1)[0]
        n2, d1 = other.num.divmod(g2)[0], self.den.divmod(g2)[0]
        return _from_coprime(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num.coeffs:
            raise InversionOfZero("inverse of zero")
        return _from_coprime(self.den, self.num)

    def __truediv__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return _as_scalar(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, c) -> Fraction:
        """Value at ``q = c``; raises if the denominator vanishes there."""
        d = self.den(Fraction(c))
        if d == 0:
            raise InversionOfZero(f"denominator vanishes at q={c}")
        return Fraction(self.num(Fraction(c))) / d

    def is_negative(self) -> bool:
        """Sign of the leading numerator coefficient (used for printing)."""
        return bool(self.num.coeffs) and self.num.lc < 0

    def integer_form(self) -> tuple[QPoly, QPoly]:
        """Numerator and denominator scaled to coprime integer coefficients."""
        from math import gcd, lcm

        m = lcm(self.num.content_lcm(), self.den.content_lcm())
        num = [int(c * m) for c in self.num.coeffs]
        den = [int(c * m) for c in self.den.coeffs]
        g = 0
        for c in num + den:
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den = [c // g for c in den]
        return QPoly(num), QPoly(den)

    def __str__(self) -> str:
        num, den = self.integer_form()
        ns = num.format()
        if den.is_one():
            return ns
        ds = den.format()
        if len([c for c in num.coeffs if c != 0]) > 1:
            ns = f"({ns})"
        if len([c for c in den.coeffs if c != 0]) > 1 or den.degree >= 1 and den.lc != 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def needs_parens(self) -> bool:
        """True when the printed form is not a single signed factor."""
        num, den = self.integer_form()
        return len([c for c in num.coeffs if c != 0]) > 1 and den.is_one()

    def to_json(self) -> dict:
        return {"num": [_json_rat(c) for c in self.num.coeffs], "den": [_json_rat(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        return cls(QPoly(Fraction(c) for c in obj["num"]), QPoly(Fraction(c) for c in obj["den"]))


def _json_rat(c):
    return c if isinstance(c, int) else str(c)


def _as_poly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return QPoly((x,))
    return QPoly(x)


def _as_scalar(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar.from_rational(x)
    return None


def _from_coprime(num: QPoly, den: QPoly) -> Scalar:
    if num.is_zero():
        return ZERO
    lc = den.lc
    if lc != 1:
        inv = 1 / Fraction(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    return Scalar._raw(num, den)


def _canonical(num: QPoly, den: QPoly) -> tuple[QPoly, QPoly]:
    if num.is_zero():
        return _ZERO, _ONE
    if den.degree > 0:
        g = num.gcd(den)
        if not g.is_one():
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
    lc = den.lc
    if lc != 1:
        inv = 1 / Fraction(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


ZERO = Scalar._raw(_ZERO, _ONE)
ONE = Scalar._raw(_ONE, _ONE)
_SQ = Scalar._raw(_Q, _ONE)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


@dataclass(frozen=True)
class FieldConfig:
    """Coefficient field: symbolic ``Q(q)`` or ``Q`` with ``q`` specialized."""

    mode: str = "symbolic"
    q_value: Fraction | None = None

    def __post_init__(self):
        if self.mode not in ("symbolic", "specialized"):
            raise ValueError(f"unknown field mode {self.mode!r}")
        if self.mode == "specialized":
            if self.q_value is None:
                raise ValueError("specialized mode needs a q value")
            object.__setattr__(self, "q_value", Fraction(self.q_value))
            if self.q_value == 0:
                raise ZeroQ("q must be invertible; q = 0 is not allowed")
        elif self.q_value is not None:
            raise ValueError("symbolic mode takes no q value")

    @classmethod
    def specialized(cls, value) -> "FieldConfig":
        if isinstance(value, str):
            value = Fraction(value.strip())
        return cls("specialized", Fraction(value))

    @property
    def symbolic(self) -> bool:
        return self.mode == "symbolic"

    def q(self) -> Scalar:
        if self.symbolic:
            return _SQ
        return Scalar.from_rational(self.q_value)

    def coerce(self, s: Scalar) -> Scalar:
        """Map a symbolic scalar into this field (evaluate at ``q`` if specialized)."""
        if self.symbolic or s.is_constant():
            return s
        return Scalar.from_rational(s.evaluate(self.q_value))

    def name(self) -> str:
        return "Q(q)" if self.symbolic else f"Q, q={self.q_value}"


SYMBOLIC = FieldConfig()
