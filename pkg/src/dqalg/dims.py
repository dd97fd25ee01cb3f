"""Hilbert functions, GK dimension and elimination for left ideals of D_q(n).

Everything here works on the leading-monomial data of a reduced left
Gröbner basis.  Standard monomials (those divisible by no leading monomial)
form a basis of the quotient module, so dimension counts are purely
combinatorial once the basis is known.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Iterable

from .freealg import BadDimension
from .leftgb import (
    BoundedMembershipOracle,
    GroebnerBasis,
    IdealPresentation,
    OrderNotSolvable,
    buchberger,
    divides,
)
from .pbw import DEG_PAPER_LEX, DqAlgebra, OrderSpec, lm, monomials_of_degree, validate_ordering

__all__ = [
    "OrderNotDegreeCompatible",
    "HilbertSeries",
    "hilbert_series",
    "StaircaseIdeal",
    "KeepSet",
    "DimensionReport",
    "quotient_hilbert_function",
    "gk_dim_quotient",
    "EliminationResult",
    "elimination_candidates",
    "eliminate",
    "KeepVerdict",
    "EliminationCertificate",
    "elimination_certificate",
    "find_elimination_order",
    "brute_force_intersection",
]


class OrderNotDegreeCompatible(ValueError):
    pass


# ---------------------------------------------------------------------------
# Hilbert series of the whole algebra


@dataclass(frozen=True)
class HilbertSeries:
    """``1/(1-t)^N`` with ``N = n*n``."""

    n: int

    @property
    def exponent(self) -> int:
        return self.n * self.n

    def coefficient(self, k: int) -> int:
        if k < 0:
            return 0
        N = self.exponent
        return comb(k + N - 1, N - 1)

    def values(self, upto: int) -> list:
        return [self.coefficient(k) for k in range(upto + 1)]

    def __str__(self) -> str:
        return f"1/(1-t)^{self.exponent}"


def hilbert_series(n: int) -> HilbertSeries:
    if not isinstance(n, int) or n < 2:
        raise BadDimension(f"n must be an integer >= 2, got {n!r}")
    return HilbertSeries(n)


# ---------------------------------------------------------------------------
# staircases


def _binom_poly(x: int, N: int) -> int:
    """Number of degree-x monomials in N variables (0 for x < 0)."""
    return comb(x + N - 1, N - 1) if x >= 0 else 0


@dataclass(frozen=True)
class StaircaseIdeal:
    """Monomial ideal spanned by leading monomials; generators form an antichain."""

    n: int
    minimal_generators: tuple

    def __post_init__(self):
        gens = sorted(set(tuple(m) for m in self.minimal_generators))
        minimal = tuple(m for m in gens if not any(o != m and divides(o, m) for o in gens))
        object.__setattr__(self, "minimal_generators", minimal)

    @classmethod
    def of_basis(cls, G: GroebnerBasis) -> "StaircaseIdeal":
        return cls(G.n, tuple(G.leading_monomials()))

    @classmethod
    def empty(cls, n: int) -> "StaircaseIdeal":
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> "StaircaseIdeal":
        return cls(n, ((0,) * (n * n),))

    @property
    def N(self) -> int:
        return self.n * self.n

    def is_standard(self, m: tuple) -> bool:
        return not any(divides(g, m) for g in self.minimal_generators)

    def count_by_enumeration(self, k: int) -> int:
        return sum(1 for m in monomials_of_degree(self.N, k) if self.is_standard(m))

    def count(self, k: int) -> int:
        """Standard monomials of degree ``k`` by inclusion-exclusion over generator lcms."""
        gens = self.minimal_generators
        if len(gens) > 18:
            return self.count_by_enumeration(k)
        total = 0
        for r in range(len(gens) + 1):
            for sub in itertools.combinations(gens, r):
                deg = sum(map(max, zip(*sub))) if sub else 0
                total += (-1) ** r * _binom_poly(k - deg, self.N)
        return total

    def supports(self) -> list:
        return [frozenset(p for p, e in enumerate(m) if e) for m in self.minimal_generators]

    def stable_from(self) -> int:
        """Degree from which the standard-monomial count is a polynomial in k."""
        if not self.minimal_generators:
            return 0
        top = sum(map(max, zip(*self.minimal_generators)))
        return max(0, top - self.N + 1)


def _as_staircase(G) -> StaircaseIdeal:
    if isinstance(G, StaircaseIdeal):
        return G
    if isinstance(G, GroebnerBasis):
        if not G.order.degree_compatible:
            raise OrderNotDegreeCompatible(f"order {G.order.name()} does not compare degree first")
        return StaircaseIdeal.of_basis(G)
    raise TypeError(f"expected a GroebnerBasis or StaircaseIdeal, got {type(G).__name__}")


def quotient_hilbert_function(G: "GroebnerBasis | StaircaseIdeal", k: int) -> int:
    """Dimension of the degree-``k`` part of D_q(n)/L."""
    return _as_staircase(G).count(k)


# ---------------------------------------------------------------------------
# GK dimension


@dataclass(frozen=True)
class KeepSet:
    """Nonempty proper subset of the generators, in index order."""

    U: tuple
    n: int

    def __post_init__(self):
        U = tuple(sorted(set(tuple(g) for g in self.U)))
        if not U:
            raise ValueError("keep set must be nonempty")
        if any(not (1 <= i <= self.n and 1 <= j <= self.n) for i, j in U):
            raise ValueError(f"keep set has an index out of range for n={self.n}")
        if len(U) >= self.n * self.n:
            raise ValueError("keep set must be a proper subset of the generators")
        object.__setattr__(self, "U", U)

    def positions(self) -> frozenset:
        return frozenset((i - 1) * self.n + (j - 1) for i, j in self.U)

    def name(self) -> str:
        return ",".join(f"d[{i},{j}]" for i, j in self.U)


@dataclass
class DimensionReport:
    n: int
    order: str
    gk_dim: int
    witness_variable_set: tuple
    hilbert_values: list
    growth_degree: int | None = None  # degree of the eventual Hilbert polynomial, -1 if eventually zero
    cross_check: bool | None = None
    generators: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "order": self.order,
            "generators": self.generators,
            "gk_dim": self.gk_dim,
            "witness": [f"d[{i},{j}]" for i, j in self.witness_variable_set],
            "hilbert_values": self.hilbert_values,
            "growth_degree": self.growth_degree,
            "cross_check": self.cross_check,
        }


def _max_independent(st: StaircaseIdeal) -> tuple:
    """Lexicographically first largest set of positions containing no generator support."""
    supports = st.supports()
    for size in range(st.N, -1, -1):
        for Y in itertools.combinations(range(st.N), size):
            Ys = frozenset(Y)
            if not any(s <= Ys for s in supports):
                return Y
    return ()


def _growth_degree(values: list) -> int:
    """Degree of the polynomial through ``values`` (-1 if identically zero)."""
    diffs = list(values)
    deg = -1
    order = 0
    while diffs:
        if any(diffs):
            deg = order
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        order += 1
    return deg


def gk_dim_quotient(G: "GroebnerBasis | StaircaseIdeal", k_max: int | None = None) -> DimensionReport:
    """GK dimension of D_q(n)/L via the largest variable set avoided by the staircase.

    The unit ideal has an empty staircase complement; its dimension is
    reported as 0 with an empty witness.
    """
    gens_text: list = []
    order_name = "staircase"
    if isinstance(G, GroebnerBasis):
        gens_text = [g.format(G.order) for g in G.generators]
        order_name = G.order.name()
        if not G.order.degree_compatible:
            G = buchberger(IdealPresentation(G.generators, DEG_PAPER_LEX), certificates=False)
        st = StaircaseIdeal.of_basis(G)
    else:
        st = _as_staircase(G)
    n, N = st.n, st.N
    gens = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    if any(not any(m) for m in st.minimal_generators):
        witness: tuple = ()
        dim = 0
    else:
        Y = _max_independent(st)
        witness = tuple(gens[p] for p in Y)
        dim = len(Y)

    k0 = st.stable_from()
    top = k0 + N + 1
    if k_max is None:
        k_max = top
    values = [st.count(k) for k in range(max(k_max, top) + 1)]
    growth = _growth_degree(values[k0 : top + 1])
    expected = dim - 1 if dim > 0 else -1
    # a finite quotient has growth -1 and an empty witness; unit ideal likewise
    return DimensionReport(
        n,
        order_name,
        dim,
        witness,
        values[: k_max + 1],
        growth_degree=growth,
        cross_check=(growth == expected) or (dim == 0 and growth == -1),
        generators=gens_text,
    )


# ---------------------------------------------------------------------------
# elimination


@dataclass
class EliminationResult:
    keep: KeepSet
    elements: list
    zero: bool
    method: str  # "elimination-order", "basis-member" or "standard-monomials"
    order: OrderSpec | None = None  # validated elimination order, when one was found

    @property
    def validated(self) -> bool:
        return self.method == "elimination-order"


def _lp_weights(alg: DqAlgebra, keep: KeepSet) -> list:
    """Integer weights on eliminated generators making every F2 tail lighter than its lead.

    For i>s, j>t the product d_ij*d_st has lead d_st d_ij and tail d_sj d_it.
    Weights live on the eliminated part only; when the eliminated parts of
    lead and tail differ the lead must be strictly heavier.
    """
    from scipy.optimize import linprog

    n = alg.n
    keep_set = set(keep.U)
    elim = [g for g in alg.generators if g not in keep_set]
    col = {g: c for c, g in enumerate(elim)}
    rows = []
    for i, j, s, t in itertools.product(range(1, n + 1), repeat=4):
        if not (i > s and j > t):
            continue
        v = [0] * len(elim)
        for g, sign in (((s, t), 1), ((i, j), 1), ((s, j), -1), ((i, t), -1)):
            if g in col:
                v[col[g]] += sign
        if any(v):
            rows.append(v)
    out = []
    for strict in (1, 0):
        if rows:
            res = linprog(
                c=[1] * len(elim),
                A_ub=[[-x for x in r] for r in rows],
                b_ub=[-strict] * len(rows),
                bounds=[(1, None)] * len(elim),
                method="highs",
            )
            if not res.success:
                continue
            fr = [Fraction(x).limit_denominator(1000) for x in res.x]
        else:
            fr = [Fraction(1)] * len(elim)
        den = lcm(*(f.denominator for f in fr))
        w = {g: int(f * den) for g, f in zip(elim, fr)}
        if w not in out:
            out.append(w)
    return out


def elimination_candidates(alg: DqAlgebra, keep: KeepSet) -> list:
    """Block orders that rank anything involving an eliminated generator above V(S)."""
    cands = [OrderSpec.block(keep.U)]
    for w in _lp_weights(alg, keep):
        cands.append(OrderSpec.block(keep.U, inner=OrderSpec.weighted(w)))
    return cands


def find_elimination_order(alg: DqAlgebra, keep: KeepSet, validation_cap: int | None = None) -> OrderSpec | None:
    cap = validation_cap or (3 if alg.n <= 2 else 2)
    for order in elimination_candidates(alg, keep):
        if validate_ordering(order, alg, degree_cap=cap).passed:
            return order
    return None


def _on_keep(f, positions: frozenset) -> bool:
    return all(p in positions for m in f.terms for p, e in enumerate(m) if e)


def eliminate(L: IdealPresentation, keep: "KeepSet | Iterable", allow_fallback: bool = True) -> EliminationResult:
    """Elements of a Gröbner basis lying in V(S), the span of monomials on ``keep``.

    With a validated elimination order the returned elements generate
    L ∩ V(S) and an empty list certifies the intersection is zero.  When no
    candidate order validates, two sound certificates under the graded
    order are tried: a basis element supported on ``keep`` proves the
    intersection nonzero, and a staircase with no generator supported on
    ``keep`` proves it zero.  Otherwise OrderNotSolvable is raised.
    """
    alg = L.algebra
    if not isinstance(keep, KeepSet):
        keep = KeepSet(tuple(keep), alg.n)
    pos = keep.positions()
    order = find_elimination_order(alg, keep)
    if order is not None:
        G = buchberger(L.with_order(order), certificates=False)
        els = [g for g in G.elements if _on_keep(g, pos)]
        return EliminationResult(keep, els, not els, "elimination-order", order)
    if not allow_fallback:
        raise OrderNotSolvable(f"no validated elimination order for keep set {{{keep.name()}}}")
    G = buchberger(L.with_order(DEG_PAPER_LEX), certificates=False)
    els = [g for g in G.elements if _on_keep(g, pos)]
    if els:
        return EliminationResult(keep, els, False, "basis-member")
    leads = [lm(g, DEG_PAPER_LEX)[0] for g in G.elements]
    if not any(all(p in pos for p, e in enumerate(m) if e) for m in leads):
        return EliminationResult(keep, [], True, "standard-monomials")
    raise OrderNotSolvable(f"no validated elimination order for keep set {{{keep.name()}}} and no fallback certificate")


@dataclass
class KeepVerdict:
    keep: tuple
    status: str  # verified | failed | unverified | trivial
    elements: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {
            "keep": [f"d[{i},{j}]" for i, j in self.keep],
            "status": self.status,
            "elements": [str(e) for e in self.elements],
            "note": self.note,
        }


@dataclass
class EliminationCertificate:
    n: int
    t: int
    verdicts: list

    @property
    def holds(self) -> bool:
        return not any(v.status == "failed" for v in self.verdicts)

    def counts(self) -> dict:
        out: dict = {}
        for v in self.verdicts:
            out[v.status] = out.get(v.status, 0) + 1
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "t": self.t, "holds": self.holds, "verdicts": [v.to_json() for v in self.verdicts]}


def elimination_certificate(L: IdealPresentation, t: int | None = None) -> EliminationCertificate:
    """Check that every keep set of size t+1 meets L nontrivially, t = GK dimension of the quotient.

    ``t`` is always recomputed; a supplied value that disagrees raises.
    Keep sets without a validated elimination order are reported as
    ``unverified`` with the fallback verdict in the note.
    """
    alg = L.algebra
    G = buchberger(L.with_order(DEG_PAPER_LEX), certificates=False)
    t_actual = gk_dim_quotient(G).gk_dim
    if t is not None and t != t_actual:
        raise ValueError(f"supplied t={t} but the quotient has GK dimension {t_actual}")
    t = t_actual
    size = t + 1
    verdicts = []
    if size >= alg.N:
        verdicts.append(KeepVerdict(tuple(alg.generators), "trivial", note="keep set is every generator"))
        return EliminationCertificate(alg.n, t, verdicts)
    for U in itertools.combinations(alg.generators, size):
        keep = KeepSet(U, alg.n)
        try:
            res = eliminate(L, keep)
        except OrderNotSolvable as exc:
            verdicts.append(KeepVerdict(keep.U, "unverified", note=str(exc)))
            continue
        if res.validated:
            status = "failed" if res.zero else "verified"
            verdicts.append(KeepVerdict(keep.U, status, res.elements, note=res.order.name()))
        else:
            verdict = "zero" if res.zero else "nonzero"
            note = f"no validated elimination order; {res.method} fallback says intersection is {verdict}"
            verdicts.append(KeepVerdict(keep.U, "unverified", res.elements, note=note))
    return EliminationCertificate(alg.n, t, verdicts)


def brute_force_intersection(L: IdealPresentation, keep: "KeepSet | Iterable", cap: int = 4) -> bool:
    """Does L contain a nonzero element of degree <= cap supported on ``keep``?"""
    alg = L.algebra
    if not isinstance(keep, KeepSet):
        keep = KeepSet(tuple(keep), alg.n)
    oracle = BoundedMembershipOracle(L.generators, cap)
    if not oracle.homogeneous:
        raise ValueError("brute-force intersection search needs homogeneous generators")
    return any(oracle.span_meets(set(keep.positions()), d) for d in range(cap + 1))
