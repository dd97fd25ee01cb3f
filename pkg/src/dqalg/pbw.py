"""D_q(n) as a solvable polynomial algebra on its PBW basis.

A PBW monomial is stored as a flat row-major exponent tuple of length n*n;
its canonical word lists ``d[i,j]^k`` factors in ascending index order.
Products are computed by concatenating canonical words and rewriting with
the defining relations (see :mod:`dqalg.freealg`).

Orderings on monomials are described by :class:`OrderSpec`.  Every order is
realised as a sort key, so comparing two monomials is comparing their keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .freealg import BadDimension, FreePoly, RewriteSystem, Word, is_nondecreasing
from .scalarfield import ONE, SYMBOLIC, ZERO, FieldConfig, Scalar

__all__ = [
    "NotNormalForm",
    "ZeroElement",
    "OrderSpec",
    "PAPER_LEX",
    "DEG_PAPER_LEX",
    "DEG_PAPER_LEX_INDEX_SORTED",
    "NATURAL_LEX",
    "DqAlgebra",
    "PBWElement",
    "SolvabilityReport",
    "compare_generators_paper",
    "compare_pbw",
    "lm",
    "validate_ordering",
    "monomials_of_degree",
]


class NotNormalForm(ValueError):
    pass


class ZeroElement(ValueError):
    pass


Monomial = tuple  # flat exponent tuple, row-major


def compare_generators_paper(a, b) -> int:
    """Generator order of the solvable structure: row first, then *larger* column is smaller."""
    ka, kb = (a[0], -a[1]), (b[0], -b[1])
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class OrderSpec:
    """Description of a total order on PBW monomials.

    kinds:

    ``paper_lex``
        Factor sequences in ascending index order, compared position by
        position with :func:`compare_generators_paper`; a proper prefix is
        smaller.
    ``deg_then_paper_lex``
        Total degree first; then factor sequences listed in ascending
        generator order are compared the same way.  Same-row generators
        commute, so listing a row's factors by descending column is another
        spelling of the same PBW monomial.
    ``deg_then_paper_lex_index_sorted``
        Total degree first, then ``paper_lex`` verbatim.
    ``natural_lex``
        Like ``paper_lex`` but generators compared by plain index order.
    ``weighted``
        Integer weight of the exponent vector first, then ``inner``.
    ``block_elimination``
        The part outside ``keep`` compared by ``inner`` first, then the part
        on ``keep`` by ``outer``.
    """

    kind: str
    keep: frozenset | None = None
    inner: "OrderSpec | None" = None
    outer: "OrderSpec | None" = None
    weights: tuple | None = None  # ((i, j), w) pairs

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block_elimination":
            if not self.keep:
                raise ValueError("block elimination needs a nonempty keep set")
            if self.inner is None or self.outer is None:
                raise ValueError("block elimination needs inner and outer orders")
            object.__setattr__(self, "keep", frozenset(tuple(g) for g in self.keep))
        if self.kind == "weighted":
            if self.weights is None or self.inner is None:
                raise ValueError("weighted order needs weights and a tie-break order")
            object.__setattr__(self, "weights", tuple(sorted((tuple(g), int(w)) for g, w in self.weights)))

    @classmethod
    def block(cls, keep: Iterable, inner: "OrderSpec | None" = None, outer: "OrderSpec | None" = None) -> "OrderSpec":
        return cls(
            "block_elimination",
            keep=frozenset(tuple(g) for g in keep),
            inner=inner or DEG_PAPER_LEX,
            outer=outer or DEG_PAPER_LEX,
        )

    @classmethod
    def weighted(cls, weights: Mapping, tie: "OrderSpec | None" = None) -> "OrderSpec":
        return cls("weighted", weights=tuple(weights.items()), inner=tie or DEG_PAPER_LEX)

    @property
    def degree_compatible(self) -> bool:
        if self.kind in ("deg_then_paper_lex", "deg_then_paper_lex_index_sorted"):
            return True
        return False

    def name(self) -> str:
        if self.kind == "block_elimination":
            keep = ",".join(f"d[{i},{j}]" for i, j in sorted(self.keep))
            if self.inner == DEG_PAPER_LEX and self.outer == DEG_PAPER_LEX:
                return f"elim:{keep}"
            return f"elim:{keep};{self.inner.name()}"
        if self.kind == "weighted":
            ws = ",".join(f"{i}{j}:{w}" for (i, j), w in self.weights)
            return f"weighted({ws};{self.inner.name()})"
        return _NAMES[self.kind]

    def key(self, n: int) -> Callable[[Monomial], tuple]:
        return _key_function(self, n)

    def validate_for(self, n: int) -> None:
        if self.kind == "block_elimination":
            allg = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
            if not self.keep <= allg or self.keep == allg:
                raise ValueError("keep set must be a proper nonempty subset of the generators")

    def __str__(self) -> str:
        return self.name()


_KINDS = (
    "paper_lex",
    "deg_then_paper_lex",
    "deg_then_paper_lex_index_sorted",
    "natural_lex",
    "weighted",
    "block_elimination",
)
_NAMES = {
    "paper_lex": "paper-lex",
    "deg_then_paper_lex": "deg-paper-lex",
    "deg_then_paper_lex_index_sorted": "deg-paper-lex-index-sorted",
    "natural_lex": "natural-lex",
}

PAPER_LEX = OrderSpec("paper_lex")
DEG_PAPER_LEX = OrderSpec("deg_then_paper_lex")
DEG_PAPER_LEX_INDEX_SORTED = OrderSpec("deg_then_paper_lex_index_sorted")
NATURAL_LEX = OrderSpec("natural_lex")


def _gens(n: int) -> list:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


@lru_cache(maxsize=None)
def _key_function(order: OrderSpec, n: int) -> Callable[[Monomial], tuple]:
    gens = _gens(n)
    # rank of each flat position under the solvable generator order
    prank = {g: r for r, g in enumerate(sorted(gens, key=lambda g: (g[0], -g[1])))}
    paper_rank = [prank[g] for g in gens]
    # flat positions listed in ascending generator order
    by_paper = sorted(range(len(gens)), key=lambda p: paper_rank[p])
    kind = order.kind

    if kind == "paper_lex":

        def key(m):
            return tuple(r for p, e in enumerate(m) for r in (paper_rank[p],) * e)

    elif kind == "natural_lex":

        def key(m):
            return tuple(p for p, e in enumerate(m) for _ in range(e))

    elif kind == "deg_then_paper_lex":

        def key(m):
            return (sum(m), tuple(paper_rank[p] for p in by_paper for _ in range(m[p])))

    elif kind == "deg_then_paper_lex_index_sorted":

        def key(m):
            return (sum(m), tuple(r for p, e in enumerate(m) for r in (paper_rank[p],) * e))

    elif kind == "weighted":
        wmap = dict(order.weights)
        w = [wmap.get(g, 0) for g in gens]
        tie = _key_function(order.inner, n)

        def key(m):
            return (sum(a * b for a, b in zip(w, m)), tie(m))

    elif kind == "block_elimination":
        keep_mask = [g in order.keep for g in gens]
        inner = _key_function(order.inner, n)
        outer = _key_function(order.outer, n)

        def key(m):
            rest = tuple(0 if k else e for k, e in zip(keep_mask, m))
            kept = tuple(e if k else 0 for k, e in zip(keep_mask, m))
            return (inner(rest), outer(kept))

    else:  # pragma: no cover
        raise ValueError(kind)
    return key


def compare_pbw(u: Monomial, v: Monomial, order: OrderSpec, n: int | None = None) -> int:
    """-1, 0 or 1 as ``u`` is below, equal to or above ``v`` under ``order``."""
    u, v = _as_mono(u), _as_mono(v)
    n = n or _dim_of(u)
    key = order.key(n)
    ku, kv = key(u), key(v)
    return (ku > kv) - (ku < kv)


def _as_mono(m) -> Monomial:
    if isinstance(m, PBWElement):
        if len(m.terms) != 1:
            raise ValueError("expected a single monomial")
        return next(iter(m.terms))
    if m and isinstance(m[0], (tuple, list)):
        return tuple(x for row in m for x in row)
    return tuple(m)


def _dim_of(m: Monomial) -> int:
    n = int(round(len(m) ** 0.5))
    if n * n != len(m):
        raise ValueError("exponent tuple length is not a square")
    return n


def monomials_of_degree(N: int, k: int) -> Iterator[Monomial]:
    """All exponent tuples of length ``N`` with entries summing to ``k``."""
    for bars in itertools.combinations(range(k + N - 1), N - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(k + N - 1 - prev - 1)
        yield tuple(out)


# ---------------------------------------------------------------------------
# the algebra


class DqAlgebra:
    """The quantized matrix algebra D_q(n) over a fixed coefficient field."""

    def __init__(self, n: int, field: FieldConfig = SYMBOLIC):
        if not isinstance(n, int) or n < 2:
            raise BadDimension(f"n must be an integer >= 2, got {n!r}")
        self.n = n
        self.N = n * n
        self.field = field
        self.generators = _gens(n)
        self.system = RewriteSystem.for_n(n, field)
        self._pos = {g: p for p, g in enumerate(self.generators)}
        self._products: dict = {}
        self._validations: dict = {}

    def __repr__(self) -> str:
        return f"DqAlgebra(n={self.n}, field={self.field.name()})"

    # construction helpers
    def unit_monomial(self, g) -> Monomial:
        m = [0] * self.N
        m[self._pos[tuple(g)]] = 1
        return tuple(m)

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.N

    def element(self, terms: Mapping | Iterable = ()) -> "PBWElement":
        return PBWElement(self, terms)

    def one(self) -> "PBWElement":
        return PBWElement._raw(self, {self.one_monomial: ONE})

    def zero(self) -> "PBWElement":
        return PBWElement._raw(self, {})

    def scalar(self, c) -> "PBWElement":
        c = c if isinstance(c, Scalar) else Scalar.from_rational(c)
        return PBWElement._raw(self, {self.one_monomial: c} if c else {})

    def gen(self, i: int, j: int) -> "PBWElement":
        return PBWElement._raw(self, {self.unit_monomial((i, j)): ONE})

    def monomial(self, m, c: Scalar = ONE) -> "PBWElement":
        m = _as_mono(m)
        if len(m) != self.N:
            raise ValueError("exponent tuple has wrong length")
        return PBWElement._raw(self, {m: c} if c else {})

    def parse(self, src: str) -> "PBWElement":
        from .textio import parse_element

        return parse_element(src, self)

    # words <-> monomials
    def word(self, m: Monomial) -> Word:
        return tuple(g for g, e in zip(self.generators, m) for _ in range(e))

    def monomial_of_word(self, w: Word) -> Monomial:
        if not is_nondecreasing(w):
            raise NotNormalForm(f"word is not in normal form: {w}")
        m = [0] * self.N
        for g in w:
            m[self._pos[tuple(g)]] += 1
        return tuple(m)

    def to_free(self, f: "PBWElement") -> FreePoly:
        return FreePoly._raw({self.word(m): c for m, c in f.terms.items()})

    def from_free(self, F: FreePoly) -> "PBWElement":
        out: dict = {}
        for w, c in F.terms.items():
            m = self.monomial_of_word(w)
            out[m] = out.get(m, ZERO) + c
        return PBWElement(self, out)

    def normalize_free(self, F: FreePoly, strategy: str = "leftmost") -> "PBWElement":
        return self.from_free(self.system.reduce(F, strategy))

    # products
    def monomial_product(self, a: Monomial, b: Monomial, strategy: str = "leftmost") -> dict:
        """``a * b`` as a dict monomial -> coefficient (cached)."""
        key = (a, b, strategy)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        if not any(a):
            res = {b: ONE}
        elif not any(b):
            res = {a: ONE}
        else:
            last = max(p for p, e in enumerate(a) if e)
            first = min(p for p, e in enumerate(b) if e)
            if last <= first:
                res = {tuple(x + y for x, y in zip(a, b)): ONE}
            else:
                w = self.word(a) + self.word(b)
                red = self.system.reduce(FreePoly.word(w), strategy)
                res = {self.monomial_of_word(v): c for v, c in red.terms.items()}
        self._products[key] = res
        return res

    def multiply(self, f: "PBWElement", g: "PBWElement", strategy: str = "leftmost") -> "PBWElement":
        out: dict = {}
        for a, ca in f.terms.items():
            for b, cb in g.terms.items():
                cab = ca * cb
                for m, c in self.monomial_product(a, b, strategy).items():
                    s = out.get(m, ZERO) + cab * c
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
        return PBWElement._raw(self, out)

    def monomials_up_to(self, degree: int) -> list:
        return [m for k in range(degree + 1) for m in monomials_of_degree(self.N, k)]

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for (i, j), e in zip(self.generators, m):
            if e == 1:
                parts.append(f"d[{i},{j}]")
            elif e > 1:
                parts.append(f"d[{i},{j}]^{e}")
        return "*".join(parts) if parts else "1"


class PBWElement:
    """Element of D_q(n) in PBW normal form: monomial -> nonzero Scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: DqAlgebra, terms: Mapping | Iterable = ()):
        self.algebra = algebra
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in items:
            m = _as_mono(m)
            c = c if isinstance(c, Scalar) else Scalar.from_rational(c)
            acc[m] = acc.get(m, ZERO) + c
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, algebra: DqAlgebra, terms: dict) -> "PBWElement":
        e = object.__new__(cls)
        e.algebra = algebra
        e.terms = terms
        return e

    @property
    def n(self) -> int:
        return self.algebra.n

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PBWElement):
            return self.algebra.n == other.algebra.n and self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra.n, frozenset(self.terms.items())))

    def _coerce(self, other) -> "PBWElement | None":
        if isinstance(other, PBWElement):
            if other.algebra.n != self.algebra.n:
                raise ValueError("elements of different algebras")
            return other
        if isinstance(other, (int, Scalar)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other) -> "PBWElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return PBWElement._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "PBWElement":
        return PBWElement._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "PBWElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PBWElement":
        return (-self) + other

    def scale(self, c: Scalar) -> "PBWElement":
        c = c if isinstance(c, Scalar) else Scalar.from_rational(c)
        if not c:
            return self.algebra.zero()
        return PBWElement._raw(self.algebra, {m: c * a for m, a in self.terms.items()})

    def __mul__(self, other) -> "PBWElement":
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.algebra.multiply(self, other)

    def __rmul__(self, other) -> "PBWElement":
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c) -> "PBWElement":
        c = c if isinstance(c, Scalar) else Scalar.from_rational(c)
        return self.scale(c.inverse())

    def __pow__(self, k: int) -> "PBWElement":
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def support(self) -> set:
        """Generators occurring in some monomial."""
        gens = self.algebra.generators
        return {gens[p] for m in self.terms for p, e in enumerate(m) if e}

    def lm(self, order: OrderSpec) -> Monomial:
        return lm(self, order)[0]

    def lc(self, order: OrderSpec) -> Scalar:
        return lm(self, order)[1]

    def monic(self, order: OrderSpec) -> "PBWElement":
        return self.scale(self.lc(order).inverse())

    def sorted_terms(self, order: OrderSpec, descending: bool = True) -> list:
        key = order.key(self.algebra.n)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=descending)

    def format(self, order: OrderSpec | None = None) -> str:
        from .textio import format_element

        return format_element(self, order or PAPER_LEX)

    def __str__(self) -> str:
        return self.format()

    __repr__ = __str__


def lm(f: PBWElement, order: OrderSpec) -> tuple[Monomial, Scalar]:
    """Leading monomial and coefficient of ``f`` under ``order``."""
    if not f.terms:
        raise ZeroElement("zero element has no leading monomial")
    key = order.key(f.algebra.n)
    m = max(f.terms, key=key)
    return m, f.terms[m]


# ---------------------------------------------------------------------------
# validation of the solvable-algebra axioms


@dataclass
class GeneratorPairResult:
    low: tuple  # a_i (smaller generator)
    high: tuple  # a_j
    lam: Scalar
    tail: PBWElement
    ok: bool


@dataclass
class SolvabilityReport:
    ordering: OrderSpec
    n: int
    degree_cap: int
    generator_pair_results: list = field(default_factory=list)
    axiom2_checks: int = 0
    axiom3_checks: int = 0
    axiom2_failures: int = 0
    axiom3_failures: int = 0
    axiom2_violations: list = field(default_factory=list)
    axiom3_violations: list = field(default_factory=list)

    @property
    def pairs_passed(self) -> bool:
        return all(r.ok for r in self.generator_pair_results)

    @property
    def axioms_passed(self) -> bool:
        return not self.axiom2_violations and not self.axiom3_violations

    @property
    def passed(self) -> bool:
        return self.pairs_passed and self.axioms_passed

    def failing_pairs(self) -> list:
        return [r for r in self.generator_pair_results if not r.ok]


def validate_ordering(
    order: OrderSpec,
    algebra: DqAlgebra | int,
    degree_cap: int = 3,
    max_witnesses: int = 5,
    check_axioms: bool = True,
) -> SolvabilityReport:
    """Check the solvable-polynomial-algebra conditions for ``order``.

    (i) For every pair of generators ``a_i < a_j`` the product
    ``a_j * a_i = lam * a_i a_j + f`` must have ``lam != 0`` and
    ``LM(f) < a_i a_j``.  (ii) The monomial-ordering conditions are checked
    exhaustively on all monomial tuples of total degree <= ``degree_cap``:

    * if ``g = LM(a*b*e)`` is not 1 and differs from ``b`` then ``b < g``;
    * if ``a < b`` then ``LM(c*a*e) < LM(c*b*e)``.

    Well-ordering is not decided here.
    """
    alg = algebra if isinstance(algebra, DqAlgebra) else DqAlgebra(algebra)
    if degree_cap < 2:
        raise ValueError("degree_cap must be >= 2")
    order.validate_for(alg.n)
    cache_key = (order, degree_cap, check_axioms)
    if cache_key in alg._validations:
        return alg._validations[cache_key]
    key = order.key(alg.n)
    rep = SolvabilityReport(order, alg.n, degree_cap)

    units = sorted((alg.unit_monomial(g) for g in alg.generators), key=key)
    for x, y in itertools.combinations(units, 2):
        prod = alg.multiply(alg.monomial(y), alg.monomial(x))
        e = tuple(a + b for a, b in zip(x, y))
        lam = prod.terms.get(e, ZERO)
        tail = prod - alg.monomial(e, lam)
        ok = bool(lam) and (not tail or key(lm(tail, order)[0]) < key(e))
        rep.generator_pair_results.append(
            GeneratorPairResult(alg.generators[x.index(1)], alg.generators[y.index(1)], lam, tail, ok)
        )

    if check_axioms:
        _check_axioms(alg, order, key, degree_cap, rep, max_witnesses)
    alg._validations[cache_key] = rep
    return rep


def _check_axioms(alg, order, key, cap, rep, max_witnesses):
    by_deg = [list(monomials_of_degree(alg.N, k)) for k in range(cap + 1)]
    one = alg.one_monomial
    lm_cache: dict = {}

    def lm3(a, b, c):
        k3 = (a, b, c)
        hit = lm_cache.get(k3)
        if hit is None:
            left = alg.monomial_product(a, b)
            acc: dict = {}
            for m, cm in left.items():
                for m2, c2 in alg.monomial_product(m, c).items():
                    acc[m2] = acc.get(m2, ZERO) + cm * c2
            acc = {m: c for m, c in acc.items() if c}
            hit = max(acc, key=key) if acc else None
            lm_cache[k3] = hit
        return hit

    # condition (2)
    for da, db, de in _degree_splits(cap, 3):
        for a in by_deg[da]:
            for b in by_deg[db]:
                for e in by_deg[de]:
                    rep.axiom2_checks += 1
                    g = lm3(a, b, e)
                    if g is None or g == one or g == b:
                        continue
                    if not key(b) < key(g):
                        rep.axiom2_failures += 1
                        if len(rep.axiom2_violations) < max_witnesses:
                            rep.axiom2_violations.append({"alpha": a, "beta": b, "eta": e, "gamma": g})
    # condition (3)
    for dc, da, db, de in _degree_splits(cap, 4):
        for a in by_deg[da]:
            ka = key(a)
            for b in by_deg[db]:
                if not ka < key(b):
                    continue
                for c in by_deg[dc]:
                    for e in by_deg[de]:
                        rep.axiom3_checks += 1
                        la = lm3(c, a, e)
                        lb = lm3(c, b, e)
                        if la is None or lb is None or lb == one:
                            continue
                        if not key(la) < key(lb):
                            rep.axiom3_failures += 1
                            if len(rep.axiom3_violations) < max_witnesses:
                                rep.axiom3_violations.append(
                                    {"gamma": c, "alpha": a, "beta": b, "eta": e, "lm_a": la, "lm_b": lb}
                                )


def _degree_splits(cap: int, parts: int) -> Iterator[tuple]:
    for t in itertools.product(range(cap + 1), repeat=parts):
        if sum(t) <= cap:
            yield t
