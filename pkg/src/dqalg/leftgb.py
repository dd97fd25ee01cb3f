"""Left-ideal Gröbner bases in D_q(n).

Division, S-polynomials and Buchberger completion for left ideals of the
solvable polynomial algebra.  Left multiplication by a monomial twists
coefficients by powers of q and may add lower terms, so every division
step recomputes the product ``m * g`` exactly instead of shifting exponents.

A bounded-degree linear-algebra oracle for membership is included for
cross-checking the Gröbner machinery.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .pbw import (
    DEG_PAPER_LEX,
    DqAlgebra,
    OrderSpec,
    PBWElement,
    lm,
    monomials_of_degree,
    validate_ordering,
)
from .scalarfield import ZERO, Scalar

__all__ = [
    "OrderNotSolvable",
    "ReductionDiverged",
    "IdealPresentation",
    "GroebnerBasis",
    "TraceEntry",
    "divides",
    "left_normal_form",
    "left_division",
    "s_polynomial",
    "buchberger",
    "ideal_membership",
    "BoundedMembershipOracle",
]


class OrderNotSolvable(ValueError):
    """The order failed the solvable-algebra checks for this n."""


class ReductionDiverged(RuntimeError):
    """Division did not terminate within the step budget (order is not a well-order)."""


def divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass
class IdealPresentation:
    """A left ideal given by generators, together with the working order."""

    generators: list
    order: OrderSpec = DEG_PAPER_LEX
    n: int = field(init=False)

    def __post_init__(self):
        gens = list(self.generators)
        if not gens:
            raise ValueError("an ideal presentation needs at least one generator")
        if any(g.is_zero() for g in gens):
            raise ValueError("generators must be nonzero")
        ns = {g.algebra.n for g in gens}
        if len(ns) != 1:
            raise ValueError("generators belong to different algebras")
        self.generators = gens
        self.n = ns.pop()
        self.order.validate_for(self.n)

    @property
    def algebra(self) -> DqAlgebra:
        return self.generators[0].algebra

    def with_order(self, order: OrderSpec) -> "IdealPresentation":
        return IdealPresentation(self.generators, order)


# ---------------------------------------------------------------------------
# division


@dataclass
class _Divisor:
    poly: PBWElement
    lead: tuple


def left_division(
    f: PBWElement,
    G: Sequence[PBWElement],
    order: OrderSpec,
    max_steps: int = 100_000,
) -> tuple[list, PBWElement]:
    """Divide ``f`` by ``G`` from the left.

    Returns ``(quotients, r)`` with ``f = sum(quotients[k] * G[k]) + r`` and
    no monomial of ``r`` divisible by a leading monomial of ``G``.
    """
    alg = f.algebra
    divs = [_Divisor(g, lm(g, order)[0]) for g in G]
    key = order.key(alg.n)
    quots = [alg.zero() for _ in divs]
    rem: dict = {}
    p = dict(f.terms)
    steps = 0
    while p:
        m = max(p, key=key)
        c = p[m]
        hit = None
        for k, d in enumerate(divs):
            if divides(d.lead, m):
                u = _sub(m, d.lead)
                h = alg.monomial(u) * d.poly
                ch = h.terms.get(m)
                if ch:
                    hit = (k, u, h, ch)
                    break
        if hit is None:
            rem[m] = c
            del p[m]
            continue
        steps += 1
        if steps > max_steps:
            raise ReductionDiverged(f"left division exceeded {max_steps} steps under {order.name()}")
        k, u, h, ch = hit
        a = c / ch
        quots[k] = quots[k] + alg.monomial(u, a)
        for mm, cc in h.terms.items():
            s = p.get(mm, ZERO) - a * cc
            if s:
                p[mm] = s
            else:
                p.pop(mm, None)
    return quots, PBWElement._raw(alg, rem)


def left_normal_form(f: PBWElement, G: Sequence[PBWElement], order: OrderSpec, max_steps: int = 100_000) -> PBWElement:
    """Full left reduction of ``f`` modulo ``G``."""
    if not G or f.is_zero():
        return f
    return left_division(f, G, order, max_steps)[1]


def _cofactor_terms(f: PBWElement, g: PBWElement, order: OrderSpec):
    mf, _ = lm(f, order)
    mg, _ = lm(g, order)
    gamma = _lcm(mf, mg)
    return gamma, _sub(gamma, mf), _sub(gamma, mg)


def _lead_at(h: PBWElement, gamma: tuple, order: OrderSpec) -> Scalar:
    c = h.terms.get(gamma)
    return c if c else lm(h, order)[1]


def s_polynomial(f: PBWElement, g: PBWElement, order: OrderSpec) -> PBWElement:
    """``(u*f)/LC(u*f) - (v*g)/LC(v*g)`` with ``u, v`` the monomial cofactors to the lcm."""
    alg = f.algebra
    gamma, u, v = _cofactor_terms(f, g, order)
    uf = alg.monomial(u) * f
    vg = alg.monomial(v) * g
    return uf.scale(_lead_at(uf, gamma, order).inverse()) - vg.scale(_lead_at(vg, gamma, order).inverse())


# ---------------------------------------------------------------------------
# completion


@dataclass(frozen=True)
class TraceEntry:
    i: int
    j: int
    lcm: tuple
    result: str  # "zero" or "adjoined"
    index: int | None = None  # index of the adjoined element

    def describe(self) -> str:
        if self.result == "zero":
            return f"pair ({self.i},{self.j}) -> reduced to zero"
        return f"pair ({self.i},{self.j}) -> adjoined as element {self.index}"


@dataclass
class GroebnerBasis:
    """Reduced monic left Gröbner basis, sorted by ascending leading monomial."""

    elements: list
    order: OrderSpec
    generators: list
    trace: list | None = None
    certificates: list | None = None  # certificates[k][i]: cofactor of generator i in elements[k]

    @property
    def algebra(self) -> DqAlgebra:
        return self.generators[0].algebra

    @property
    def n(self) -> int:
        return self.algebra.n

    def leading_monomials(self) -> list:
        return [lm(g, self.order)[0] for g in self.elements]

    def is_unit(self) -> bool:
        return any(not any(m) for m in self.leading_monomials())

    def reduce(self, f: PBWElement) -> PBWElement:
        return left_normal_form(f, self.elements, self.order)

    def contains(self, f: PBWElement) -> bool:
        return self.reduce(f).is_zero()

    def spolys_reduce_to_zero(self) -> bool:
        return all(
            self.reduce(s_polynomial(a, b, self.order)).is_zero() for a, b in itertools.combinations(self.elements, 2)
        )

    def is_minimal(self) -> bool:
        lms = self.leading_monomials()
        return not any(a != b and divides(lms[a], lms[b]) for a in range(len(lms)) for b in range(len(lms)))

    def verify_certificates(self) -> bool:
        """Replay every element as an explicit left combination of the generators."""
        if self.certificates is None:
            return False
        alg = self.algebra
        for el, cert in zip(self.elements, self.certificates):
            acc = alg.zero()
            for c, g in zip(cert, self.generators):
                if c:
                    acc = acc + c * g
            if acc != el:
                return False
        return True

    def format(self, order: OrderSpec | None = None) -> list:
        return [g.format(order or self.order) for g in self.elements]


def _check_order(order: OrderSpec, alg: DqAlgebra, validation_cap: int) -> None:
    rep = validate_ordering(order, alg, degree_cap=validation_cap)
    if rep.passed:
        return
    if not rep.pairs_passed:
        bad = rep.failing_pairs()[0]
        why = f"generator pair d{bad.low} < d{bad.high} is not solvable"
    else:
        cond = 2 if rep.axiom2_violations else 3
        why = f"monomial-order condition ({cond}) fails up to degree {validation_cap}"
    raise OrderNotSolvable(f"order {order.name()} rejected for n={alg.n}: {why}")


def _default_cap(n: int) -> int:
    return 3 if n <= 3 else 2


def buchberger(
    L: IdealPresentation,
    trace: bool = False,
    certificates: bool = True,
    validation_cap: int | None = None,
    max_pairs: int = 100_000,
) -> GroebnerBasis:
    """Complete the generators of ``L`` to a reduced left Gröbner basis.

    Pairs are processed in the normal strategy: smallest lcm under the
    order first, ties broken by pair index.  Every pair is processed; the
    product criterion does not hold in this algebra.
    """
    alg = L.algebra
    order = L.order
    _check_order(order, alg, validation_cap or _default_cap(alg.n))
    key = order.key(alg.n)
    r = len(L.generators)
    zero = alg.zero()

    basis: list = []
    certs: list = []
    leads: list = []
    log: list = []

    def unit_cert(i):
        return [alg.one() if k == i else zero for k in range(r)]

    def combine(c1, a, c2, b):
        # a * c1 - b * c2, where a and b are left multipliers
        return [a * x - b * y for x, y in zip(c1, c2)]

    def reduce_with_cert(p, cert):
        quots, rem = left_division(p, basis, order)
        if certificates:
            for qk, ck in zip(quots, certs):
                if qk:
                    cert = [x - qk * y for x, y in zip(cert, ck)]
        return rem, cert

    def adjoin(p, cert):
        m, c = lm(p, order)
        inv = c.inverse()
        basis.append(p.scale(inv))
        certs.append([x.scale(inv) for x in cert] if certificates else None)
        leads.append(m)
        return len(basis) - 1

    pairs: list = []

    def push_pairs(k):
        for i in range(k):
            pairs.append((key(_lcm(leads[i], leads[k])), i, k))

    for i, g in enumerate(L.generators):
        rem, cert = reduce_with_cert(g, unit_cert(i) if certificates else None)
        if rem:
            k = adjoin(rem, cert)
            push_pairs(k)

    processed = 0
    while pairs:
        pairs.sort()
        _, i, j = pairs.pop(0)
        processed += 1
        if processed > max_pairs:
            raise ReductionDiverged(f"completion exceeded {max_pairs} pairs")
        gamma, u, v = _cofactor_terms(basis[i], basis[j], order)
        uf = alg.monomial(u) * basis[i]
        vg = alg.monomial(v) * basis[j]
        a = _lead_at(uf, gamma, order).inverse()
        b = _lead_at(vg, gamma, order).inverse()
        s = uf.scale(a) - vg.scale(b)
        cert = None
        if certificates:
            cert = combine(certs[i], alg.monomial(u, a), certs[j], alg.monomial(v, b))
        rem, cert = reduce_with_cert(s, cert)
        if rem:
            k = adjoin(rem, cert)
            log.append(TraceEntry(i, j, gamma, "adjoined", k))
            push_pairs(k)
        else:
            log.append(TraceEntry(i, j, gamma, "zero"))

    elements, final_certs = _reduce_basis(alg, order, basis, certs if certificates else None)
    return GroebnerBasis(
        elements,
        order,
        list(L.generators),
        trace=log if trace else None,
        certificates=final_certs,
    )


def _reduce_basis(alg, order, basis, certs):
    key = order.key(alg.n)
    idx = list(range(len(basis)))
    leads = [lm(g, order)[0] for g in basis]
    keep = []
    for a in idx:
        dominated = False
        for b in idx:
            if b == a or not divides(leads[b], leads[a]):
                continue
            # equal leads: keep the earlier one
            if leads[b] != leads[a] or b < a:
                dominated = True
                break
        if not dominated:
            keep.append(a)
    keep.sort(key=lambda a: key(leads[a]))
    out, out_c = [], []
    for a in keep:
        others = [basis[b] for b in keep if b != a]
        others_c = [certs[b] for b in keep if b != a] if certs is not None else None
        quots, rem = left_division(basis[a], others, order)
        c = rem.lc(order).inverse()
        out.append(rem.scale(c))
        if certs is not None:
            cert = certs[a]
            for qk, ck in zip(quots, others_c):
                if qk:
                    cert = [x - qk * y for x, y in zip(cert, ck)]
            out_c.append([x.scale(c) for x in cert])
    return out, (out_c if certs is not None else None)


def ideal_membership(f: PBWElement, L: "IdealPresentation | GroebnerBasis") -> bool:
    G = L if isinstance(L, GroebnerBasis) else buchberger(L, certificates=False)
    return G.contains(f)


# ---------------------------------------------------------------------------
# brute-force oracle


class _Echelon:
    """Incremental row echelon form over Scalars (rows are sparse dicts)."""

    def __init__(self):
        self.rows: dict = {}  # pivot monomial -> row with pivot coefficient 1

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        while v:
            piv = next((m for m in sorted(v, reverse=True) if m in self.rows), None)
            if piv is None:
                return v
            c = v[piv]
            for m, a in self.rows[piv].items():
                s = v.get(m, ZERO) - c * a
                if s:
                    v[m] = s
                else:
                    v.pop(m, None)
        return v

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        piv = max(v)
        inv = v[piv].inverse()
        row = {m: a * inv for m, a in v.items()}
        # keep existing rows free of the new pivot
        for p, other in self.rows.items():
            c = other.get(piv)
            if c:
                for m, a in row.items():
                    s = other.get(m, ZERO) - c * a
                    if s:
                        other[m] = s
                    else:
                        other.pop(m, None)
        self.rows[piv] = row
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


class BoundedMembershipOracle:
    """Decide membership by spanning all left multiples ``m * g`` up to a degree cap.

    For homogeneous generators the algebra's grading makes the test exact:
    ``f`` lies in the ideal iff every homogeneous part of ``f`` lies in the
    span of the multiples of that degree, and the answer is conclusive when
    ``deg f <= cap``.  For inhomogeneous generators a positive answer is
    still a proof, a negative one is reported as ``None``.
    """

    def __init__(self, generators: Iterable[PBWElement], cap: int = 4):
        self.generators = [g for g in generators if g]
        if not self.generators:
            raise ValueError("need at least one nonzero generator")
        self.alg = self.generators[0].algebra
        self.cap = cap
        self.homogeneous = all(g.is_homogeneous() for g in self.generators)
        self._by_degree: dict = {}
        self._all: _Echelon | None = None

    def _multiples(self, degs: Iterable[int]):
        alg = self.alg
        for g in self.generators:
            dg = g.degree
            for d in degs:
                k = d - dg
                if k < 0:
                    continue
                for m in monomials_of_degree(alg.N, k):
                    yield (alg.monomial(m) * g).terms

    def _span(self, d: int) -> _Echelon:
        e = self._by_degree.get(d)
        if e is None:
            e = _Echelon()
            for v in self._multiples([d]):
                e.add(v)
            self._by_degree[d] = e
        return e

    def decide(self, f: PBWElement) -> bool | None:
        if f.is_zero():
            return True
        if self.homogeneous:
            if f.degree > self.cap:
                return None
            parts: dict = {}
            for m, c in f.terms.items():
                parts.setdefault(sum(m), {})[m] = c
            return all(self._span(d).contains(v) for d, v in parts.items())
        if self._all is None:
            self._all = _Echelon()
            for v in self._multiples(range(self.cap + 1)):
                self._all.add(v)
        return True if self._all.contains(f.terms) else None

    def span_meets(self, keep_positions: set, d: int) -> bool:
        """Is there a nonzero degree-``d`` element of the span supported on ``keep_positions``?"""
        e = self._span(d)
        allowed = lambda m: all(p in keep_positions for p, x in enumerate(m) if x)  # noqa: E731
        # the rows are independent, so a combination vanishing off keep
        # exists iff their projections onto the other coordinates are dependent
        proj = _Echelon()
        for row in e.rows.values():
            pr = {m: a for m, a in row.items() if not allowed(m)}
            if not proj.add(pr):
                return True
        return False
