import random
from math import comb

import pytest

from dqalg.freealg import FreePoly
from dqalg.pbw import (
    DEG_PAPER_LEX,
    DEG_PAPER_LEX_INDEX_SORTED,
    NATURAL_LEX,
    PAPER_LEX,
    DqAlgebra,
    NotNormalForm,
    OrderSpec,
    ZeroElement,
    compare_generators_paper,
    compare_pbw,
    lm,
    monomials_of_degree,
    validate_ordering,
)
from dqalg.scalarfield import ONE, Scalar
from helpers import a_inversions, random_element

q = Scalar.q()


def mono(alg, *pairs):
    m = [0] * alg.N
    for g in pairs:
        m[alg.generators.index(g)] += 1
    return tuple(m)


@pytest.mark.parametrize("a, b, expected", [((1, 2), (1, 1), -1), ((1, 1), (2, 1), -1), ((2, 2), (2, 2), 0)])
def test_compare_generators(a, b, expected):
    assert compare_generators_paper(a, b) == expected


def test_compare_pbw_examples(alg2):
    m = lambda *g: mono(alg2, *g)  # noqa: E731
    assert compare_pbw(m((1, 1)), m((1, 1), (2, 2)), PAPER_LEX) == -1
    assert compare_pbw(m((1, 2), (2, 1)), m((1, 1), (2, 2)), PAPER_LEX) == -1
    assert compare_pbw(m((1, 2), (2, 1)), m((1, 1), (2, 2)), DEG_PAPER_LEX) == -1
    assert compare_pbw(m((2, 1)), m((2, 1)), PAPER_LEX) == 0
    # matrix form is accepted too
    assert compare_pbw([[1, 0], [0, 0]], [[1, 0], [0, 1]], PAPER_LEX) == -1


def test_paper_lex_prefix_clause_differs_from_exponent_lex(alg2):
    m = lambda *g: mono(alg2, *g)  # noqa: E731
    assert compare_pbw(m((1, 1)), m((1, 1), (1, 2), (1, 2)), PAPER_LEX) == -1
    assert compare_pbw(m((1, 1), (2, 1)), m((1, 1), (1, 2), (1, 2), (2, 1)), PAPER_LEX) == 1


@pytest.mark.parametrize(
    "lhs, rhs, expected",
    [
        ("d[2,2]", "d[1,1]", "d[1,1]*d[2,2] + (q-1)*d[1,2]*d[2,1]"),
        ("d[2,1]", "d[1,2]", "q*d[1,2]*d[2,1]"),
        ("1", "d[2,1]+q", "d[2,1] + q"),
        ("d[2,2]^2", "d[1,1]", "d[1,1]*d[2,2]^2 + (q^2-1)*d[1,2]*d[2,1]*d[2,2]"),
        ("d[1,2]", "d[1,1]", "d[1,1]*d[1,2]"),
    ],
)
def test_multiply_examples(alg2, lhs, rhs, expected):
    assert str(alg2.parse(lhs) * alg2.parse(rhs)) == expected


def test_lm_examples(alg2):
    f = alg2.parse("d[1,2] + d[1,1]")
    assert lm(f, PAPER_LEX) == (mono(alg2, (1, 1)), ONE)
    g = alg2.parse("d[2,2]*d[1,1]")
    assert g.lm(PAPER_LEX) == mono(alg2, (1, 1), (2, 2))
    assert lm(alg2.monomial(mono(alg2, (2, 1)), q), PAPER_LEX) == (mono(alg2, (2, 1)), q)
    with pytest.raises(ZeroElement):
        lm(alg2.zero(), PAPER_LEX)


def test_free_round_trip(alg2):
    m = mono(alg2, (1, 1), (2, 2))
    f = alg2.monomial(m)
    assert alg2.to_free(f) == FreePoly.word(((1, 1), (2, 2)))
    assert alg2.from_free(alg2.to_free(f)) == f
    with pytest.raises(NotNormalForm):
        alg2.from_free(FreePoly.word(((2, 2), (1, 1))))
    assert alg2.word(mono(alg2, (1, 2), (1, 2), (2, 1))) == ((1, 2), (1, 2), (2, 1))
    for mm in alg2.monomials_up_to(4):
        assert alg2.from_free(alg2.to_free(alg2.monomial(mm))) == alg2.monomial(mm)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("k", range(5))
def test_monomial_count(n, k):
    assert len(list(monomials_of_degree(n * n, k))) == comb(k + n * n - 1, n * n - 1)


def test_associativity_and_strategy_independence(alg2):
    rng = random.Random(5)
    for _ in range(60):
        f, g, h = (random_element(rng, alg2) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert alg2.multiply(f, g, "leftmost") == alg2.multiply(f, g, "rightmost")


def test_lm_multiplicativity(alg2):
    rng = random.Random(9)
    for _ in range(60):
        f, g = random_element(rng, alg2), random_element(rng, alg2)
        h = f * g
        mf, cf = lm(f, DEG_PAPER_LEX)
        mg, cg = lm(g, DEG_PAPER_LEX)
        assert h
        mh, ch = lm(h, DEG_PAPER_LEX)
        assert mh == tuple(a + b for a, b in zip(mf, mg))
        assert ch == q ** a_inversions(mf, mg, 2) * cf * cg


def test_validate_deg_paper_lex(alg2):
    rep = validate_ordering(DEG_PAPER_LEX, alg2, degree_cap=3)
    assert rep.passed
    assert len(rep.generator_pair_results) == 6
    assert rep.axiom2_checks > 0 and rep.axiom3_checks > 0


def test_paper_lex_pairs_pass_but_axioms_fail(alg2):
    rep = validate_ordering(PAPER_LEX, alg2, degree_cap=3)
    assert rep.pairs_passed
    assert not rep.axioms_passed
    w = rep.axiom2_violations[0]
    assert set(w) == {"alpha", "beta", "eta", "gamma"}


def test_index_sorted_variant_fails_condition_three(alg2):
    rep = validate_ordering(DEG_PAPER_LEX_INDEX_SORTED, alg2, degree_cap=3)
    assert rep.pairs_passed and not rep.axiom2_violations and rep.axiom3_violations


def test_natural_lex_fails_on_d22_d11(alg2):
    rep = validate_ordering(NATURAL_LEX, alg2, degree_cap=2)
    bad = rep.failing_pairs()
    assert [(r.low, r.high) for r in bad] == [((1, 1), (2, 2))]
    assert bad[0].lam == ONE
    assert str(bad[0].tail) == "(q-1)*d[1,2]*d[2,1]"


def test_block_orders_and_weights():
    with pytest.raises(ValueError):
        OrderSpec("block_elimination")
    b = OrderSpec.block([(1, 1)])
    assert b.name() == "elim:d[1,1]"
    with pytest.raises(ValueError):
        OrderSpec.block([(1, 1), (1, 2), (2, 1), (2, 2)]).validate_for(2)
    w = OrderSpec.weighted({(1, 1): 2})
    assert w.key(2)((1, 0, 0, 0)) > w.key(2)((0, 3, 0, 0))


def test_specialized_q1_is_commutative(alg2_q1):
    a, b = alg2_q1.parse("d[2,2]"), alg2_q1.parse("d[1,1]")
    assert a * b == b * a
    assert str(alg2_q1.parse("d[2,1]*d[1,2]")) == "d[1,2]*d[2,1]"


def test_n3_product_uses_f2(alg3):
    f = alg3.parse("d[3,3]*d[1,1]")
    assert str(f) == "d[1,1]*d[3,3] + (q-1)*d[1,3]*d[3,1]"
    assert DqAlgebra(3) is not alg3
