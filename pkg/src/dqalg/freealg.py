"""Free associative algebra K<D> on the letters D[i,j] and rewriting modulo S.

Words are tuples of ``(i, j)`` index pairs.  Letters are ordered by the
index pair, words by degree first and then lexicographically (deg-lex).
The defining relation set ``S`` of D_q(n) consists of three families:

* ``f_ijst = D_ij D_st - q D_st D_ij``                  (i > s, j <= t)
* ``g_ijst = D_ij D_st - D_st D_ij - (q-1) D_sj D_it``  (i > s, j > t)
* ``h_ijik = D_ij D_ik - D_ik D_ij``                    (j > k)

Every leading word has length two, so all compositions are overlaps of
length three; :func:`verify_gsb` reduces each of them to zero.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .scalarfield import ONE, SYMBOLIC, ZERO, FieldConfig, Scalar

__all__ = [
    "BadDimension",
    "ZeroPolynomial",
    "Word",
    "FreePoly",
    "Relation",
    "RewriteStep",
    "RewriteSystem",
    "Ambiguity",
    "GsbReport",
    "compare_deglex",
    "deglex_key",
    "leading_term",
    "generate_relations",
    "reduce",
    "ambiguities",
    "composition",
    "verify_gsb",
    "drop_tail",
    "format_word",
    "format_relations",
    "is_nondecreasing",
]

Word = tuple  # tuple[tuple[int, int], ...]


class BadDimension(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


def deglex_key(w: Word):
    return (len(w), w)


def compare_deglex(u: Word, v: Word) -> int:
    """-1, 0 or 1 as ``u`` is below, equal to or above ``v``."""
    ku, kv = deglex_key(tuple(u)), deglex_key(tuple(v))
    return (ku > kv) - (ku < kv)


def is_nondecreasing(w: Word) -> bool:
    return all(w[k] <= w[k + 1] for k in range(len(w) - 1))


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return "*".join(f"D[{i},{j}]" for i, j in w)


class FreePoly:
    """Finitely supported map Word -> Scalar (zero coefficients never stored)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for w, c in items:
            w = tuple(tuple(x) for x in w)
            c = c if isinstance(c, Scalar) else Scalar.from_rational(c)
            acc[w] = acc.get(w, ZERO) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "FreePoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def word(cls, w: Word, c: Scalar = ONE) -> "FreePoly":
        return cls._raw({tuple(w): c} if c else {})

    @classmethod
    def letters(cls, *ij) -> "FreePoly":
        return cls.word(tuple(ij))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FreePoly") -> "FreePoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreePoly._raw(out)

    def __neg__(self) -> "FreePoly":
        return FreePoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def scale(self, c: Scalar) -> "FreePoly":
        if not c:
            return FreePoly._raw({})
        return FreePoly._raw({w: c * a for w, a in self.terms.items()})

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, FreePoly):
            out: dict = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    s = out.get(w, ZERO) + a * b
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
            return FreePoly._raw(out)
        if isinstance(other, (Scalar, int)):
            return self.scale(other if isinstance(other, Scalar) else Scalar.from_rational(other))
        return NotImplemented

    def __rmul__(self, other) -> "FreePoly":
        if isinstance(other, (Scalar, int)):
            return self.scale(other if isinstance(other, Scalar) else Scalar.from_rational(other))
        return NotImplemented

    def sandwich(self, left: Word, right: Word) -> "FreePoly":
        """``left * self * right`` for words ``left`` and ``right``."""
        return FreePoly._raw({left + w + right: c for w, c in self.terms.items()})

    def sorted_terms(self, descending: bool = True) -> list:
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=descending)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for k, (w, c) in enumerate(self.sorted_terms()):
            neg = c.is_negative()
            a = -c if neg else c
            ws = format_word(w)
            if a.is_one():
                body = ws
            elif not w:
                body = f"({a})" if a.needs_parens() else str(a)
            else:
                body = (f"({a})" if a.needs_parens() else str(a)) + "*" + ws
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    __repr__ = __str__


def leading_term(f: FreePoly) -> tuple[Word, Scalar]:
    if not f.terms:
        raise ZeroPolynomial("zero polynomial has no leading term")
    w = max(f.terms, key=deglex_key)
    return w, f.terms[w]


@dataclass(frozen=True)
class Relation:
    kind: str  # "A" | "B" | "C"
    indices: tuple
    poly: FreePoly = field(compare=False)
    lead: Word = ()
    tail: FreePoly = field(default=None, compare=False)  # rewrite target of ``lead``

    @property
    def name(self) -> str:
        letter = {"A": "f", "B": "g", "C": "h"}[self.kind]
        return letter + "_" + "".join(str(x) for x in self.indices)

    def __str__(self) -> str:
        return f"{self.name}: {self.poly}"


def _make_relation(kind: str, indices: tuple, poly: FreePoly) -> Relation:
    lead, lc = leading_term(poly)
    monic = poly.scale(lc.inverse()) if not lc.is_one() else poly
    tail = FreePoly.word(lead) - monic
    return Relation(kind, indices, monic, lead, tail)


def generate_relations(n: int, field: FieldConfig = SYMBOLIC) -> list[Relation]:
    """The defining relations of D_q(n), one per admissible index tuple."""
    if not isinstance(n, int) or n < 2:
        raise BadDimension(f"n must be an integer >= 2, got {n!r}")
    q = field.q()
    rels = []
    idx = range(1, n + 1)
    for i, j, s, t in itertools.product(idx, idx, idx, idx):
        if i <= s:
            continue
        a, b = (i, j), (s, t)
        if j <= t:
            poly = FreePoly({(a, b): ONE, (b, a): -q})
            rels.append(_make_relation("A", (i, j, s, t), poly))
        else:
            poly = FreePoly({(a, b): ONE, (b, a): -ONE, ((s, j), (i, t)): -(q - 1)})
            rels.append(_make_relation("B", (i, j, s, t), poly))
    for i in idx:
        for j, k in itertools.combinations(idx, 2):
            hi, lo = (i, k), (i, j)  # k > j
            poly = FreePoly({(hi, lo): ONE, (lo, hi): -ONE})
            rels.append(_make_relation("C", (i, k, i, j), poly))
    return rels


def drop_tail(rel: Relation) -> Relation:
    """Copy of ``rel`` keeping only tail terms that permute the lead's letters.

    For an F2 relation this drops the ``(q-1)`` term; it exists to show that
    the composition check notices a broken relation set.
    """
    kept = {w: c for w, c in rel.tail.terms.items() if sorted(w) == sorted(rel.lead)}
    return _make_relation(rel.kind, rel.indices, FreePoly.word(rel.lead) - FreePoly(kept))


@dataclass(frozen=True)
class RewriteStep:
    """One rewrite: subtract ``coeff * left * rel.poly * right``."""

    coeff: Scalar
    left: Word
    relation: Relation
    right: Word

    def as_poly(self) -> FreePoly:
        return self.relation.poly.sandwich(self.left, self.right).scale(self.coeff)


class RewriteSystem:
    """Rewriting rules ``lead -> tail`` keyed by the (length-two) leading word."""

    def __init__(self, relations: Iterable[Relation]):
        self.relations = list(relations)
        self.rules: dict = {}
        for r in self.relations:
            if len(r.lead) != 2:
                raise ValueError(f"leading word of {r.name} has length {len(r.lead)}")
            if r.lead in self.rules:
                raise ValueError(f"duplicate leading word {format_word(r.lead)}")
            self.rules[r.lead] = r

    @classmethod
    def for_n(cls, n: int, field: FieldConfig = SYMBOLIC) -> "RewriteSystem":
        return cls(generate_relations(n, field))

    def find(self, w: Word, strategy: str = "leftmost"):
        rng = range(len(w) - 1)
        if strategy == "rightmost":
            rng = reversed(rng)
        rules = self.rules
        for p in rng:
            r = rules.get((w[p], w[p + 1]))
            if r is not None:
                return p, r
        return None

    def is_normal(self, w: Word) -> bool:
        return self.find(w) is None

    def reduce(self, f: FreePoly, strategy: str = "leftmost", steps: list | None = None) -> FreePoly:
        """Normal form of ``f`` modulo S.

        Words are processed from the deg-lex largest down; rewriting only
        produces smaller words, so each word is visited once with its final
        coefficient.  Within a word the leftmost (or rightmost) occurrence of
        a leading word is rewritten.  If ``steps`` is a list, one
        :class:`RewriteStep` per rewrite is appended to it.
        """
        pending = dict(f.terms)
        heap = [(-len(w), _neg(w), w) for w in pending]
        heapq.heapify(heap)
        out: dict = {}
        while heap:
            _, _, w = heapq.heappop(heap)
            c = pending.pop(w, None)
            if c is None or not c:
                continue
            hit = self.find(w, strategy)
            if hit is None:
                out[w] = c
                continue
            p, r = hit
            left, right = w[:p], w[p + 2 :]
            if steps is not None:
                steps.append(RewriteStep(c, left, r, right))
            for v, a in r.tail.terms.items():
                nw = left + v + right
                if nw in pending:
                    s = pending[nw] + c * a
                    pending[nw] = s
                else:
                    pending[nw] = c * a
                    heapq.heappush(heap, (-len(nw), _neg(nw), nw))
        return FreePoly._raw(out)


def _neg(w: Word) -> tuple:
    return tuple((-i, -j) for i, j in w)


def reduce(f: FreePoly, S, strategy: str = "leftmost", steps: list | None = None) -> FreePoly:
    """Normal form of ``f`` modulo the relation list (or rewrite system) ``S``."""
    system = S if isinstance(S, RewriteSystem) else RewriteSystem(S)
    return system.reduce(f, strategy, steps)


@dataclass(frozen=True)
class Ambiguity:
    w: Word
    left: Relation
    right: Relation
    overlap_split: int = 1  # w = left.lead + w[2:] = w[:1] + right.lead

    @property
    def prefix(self) -> Word:
        return self.w[: self.overlap_split]

    @property
    def suffix(self) -> Word:
        return self.w[len(self.left.lead) :]

    @property
    def case(self) -> str:
        """Unordered kind pair in the a/b/c naming, e.g. ``a^b``."""
        a, b = sorted((self.left.kind.lower(), self.right.kind.lower()))
        return f"{a}^{b}"

    def __str__(self) -> str:
        return f"({self.left.name}, {self.right.name})_w  w = {format_word(self.w)}  [{self.case}]"


def ambiguities(S) -> list[Ambiguity]:
    """All overlap ambiguities of the relation set (no inclusions can occur)."""
    system = S if isinstance(S, RewriteSystem) else RewriteSystem(S)
    leads = list(system.rules)
    for u in leads:
        for v in leads:
            if u != v and _contains(u, v):
                raise AssertionError(f"inclusion ambiguity {format_word(v)} in {format_word(u)}")
    by_first: dict = {}
    for lead, r in system.rules.items():
        by_first.setdefault(lead[0], []).append(r)
    out = []
    for lead, r1 in system.rules.items():
        for r2 in by_first.get(lead[1], ()):
            out.append(Ambiguity((lead[0], lead[1], r2.lead[1]), r1, r2, 1))
    out.sort(key=lambda a: deglex_key(a.w))
    return out


def _contains(u: Word, v: Word) -> bool:
    return any(u[k : k + len(v)] == v for k in range(len(u) - len(v) + 1))


def composition(amb: Ambiguity) -> FreePoly:
    """``left * suffix - prefix * right`` with both relations monic."""
    lhs = amb.left.poly.sandwich((), amb.suffix)
    rhs = amb.right.poly.sandwich(amb.prefix, ())
    return lhs - rhs


@dataclass
class GsbReport:
    n: int
    ambiguity_count: int
    failures: list = field(default_factory=list)  # (Ambiguity, nonzero normal form)
    relation_count: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.passed:
            return f"ambiguities: {self.ambiguity_count}, all compositions reduce to 0"
        return f"ambiguities: {self.ambiguity_count}, {len(self.failures)} compositions do not reduce to 0"


def verify_gsb(n: int, relations: list[Relation] | None = None, field: FieldConfig = SYMBOLIC) -> GsbReport:
    """Check that every composition of the relation set reduces to zero."""
    if not isinstance(n, int) or n < 2:
        raise BadDimension(f"n must be an integer >= 2, got {n!r}")
    rels = generate_relations(n, field) if relations is None else relations
    system = RewriteSystem(rels)
    ambs = ambiguities(system)
    report = GsbReport(n, len(ambs), relation_count=len(rels))
    for amb in ambs:
        nf = system.reduce(composition(amb))
        if nf:
            report.failures.append((amb, nf))
    return report


def format_relations(relations: Iterable[Relation]) -> str:
    """One relation per line: ``name: poly``."""
    return "\n".join(str(r) for r in relations) + "\n"


def all_words(letters: list, degree: int) -> Iterator[Word]:
    return itertools.product(letters, repeat=degree)


def letters(n: int) -> list:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
