"""Random samplers shared by the test modules."""

import random

from dqalg.pbw import DqAlgebra, PBWElement, monomials_of_degree
from dqalg.scalarfield import Scalar

_COEFFS = [
    Scalar.from_rational(1),
    Scalar.from_rational(-1),
    Scalar.from_rational(2),
    Scalar.from_rational(-3),
    Scalar.q(),
    Scalar.q() - Scalar.from_rational(1),
    Scalar.from_rational(1) / Scalar.q(),
]


def random_scalar(rng: random.Random, symbolic: bool = True) -> Scalar:
    pool = _COEFFS if symbolic else _COEFFS[:4]
    return rng.choice(pool)


def random_monomial(rng: random.Random, N: int, max_degree: int) -> tuple:
    k = rng.randint(0, max_degree)
    m = [0] * N
    for _ in range(k):
        m[rng.randrange(N)] += 1
    return tuple(m)


def random_element(rng: random.Random, alg: DqAlgebra, max_degree: int = 3, max_terms: int = 3, nonzero: bool = True) -> PBWElement:
    symbolic = alg.field.symbolic
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            terms[random_monomial(rng, alg.N, max_degree)] = alg.field.coerce(random_scalar(rng, symbolic))
        f = PBWElement(alg, terms)
        if f or not nonzero:
            return f


def random_homogeneous(rng: random.Random, alg: DqAlgebra, degree: int, max_terms: int = 3) -> PBWElement:
    mons = list(monomials_of_degree(alg.N, degree))
    while True:
        f = PBWElement(alg, {rng.choice(mons): random_scalar(rng) for _ in range(rng.randint(1, max_terms))})
        if f:
            return f


def a_inversions(u: tuple, v: tuple, n: int) -> int:
    """Count pairs x in u, y in v (with multiplicity) where moving y left past x costs a factor q.

    For x = d_ij, y = d_st the product x*y is rewritten by an A-type relation
    exactly when i > s and j <= t.
    """
    gens = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    e = 0
    for (i, j), a in zip(gens, u):
        if not a:
            continue
        for (s, t), b in zip(gens, v):
            if b and i > s and j <= t:
                e += a * b
    return e
