import random

import pytest

from dqalg.leftgb import (
    BoundedMembershipOracle,
    IdealPresentation,
    OrderNotSolvable,
    buchberger,
    divides,
    ideal_membership,
    left_division,
    left_normal_form,
    s_polynomial,
)
from dqalg.pbw import DEG_PAPER_LEX, PAPER_LEX, OrderSpec
from dqalg.scalarfield import Scalar
from helpers import random_element

q = Scalar.q()


def ideal(alg, *gens, order=DEG_PAPER_LEX):
    return IdealPresentation([alg.parse(g) for g in gens], order)


def test_normal_form_examples(alg2):
    P = alg2.parse
    assert left_normal_form(P("d[1,1]*d[2,1]"), [P("d[1,1]")], DEG_PAPER_LEX).is_zero()
    f = P("d[2,1]*d[1,2] + d[2,2]")
    assert left_normal_form(f, [], DEG_PAPER_LEX) == f
    assert left_normal_form(P("d[1,2] + d[1,1]"), [P("d[1,1]")], PAPER_LEX) == P("d[1,2]")


def test_division_certificate(alg2):
    rng = random.Random(2)
    G = [alg2.parse("d[1,1]"), alg2.parse("d[2,2] + d[1,2]")]
    for _ in range(30):
        f = random_element(rng, alg2)
        quots, r = left_division(f, G, DEG_PAPER_LEX)
        acc = r
        for c, g in zip(quots, G):
            acc = acc + c * g
        assert acc == f
        leads = [g.lm(DEG_PAPER_LEX) for g in G]
        assert not any(divides(a, m) for a in leads for m in r.terms)
        assert left_normal_form(r, G, DEG_PAPER_LEX) == r


def test_s_polynomial_examples(alg2):
    P = alg2.parse
    f = P("d[1,1] + d[1,2]*d[2,1]")
    assert s_polynomial(f, f, DEG_PAPER_LEX).is_zero()
    assert s_polynomial(P("d[1,1]"), P("d[1,2]"), DEG_PAPER_LEX).is_zero()
    s = s_polynomial(P("d[1,1]"), P("d[2,2]"), DEG_PAPER_LEX)
    assert s == P("(q-1)*d[1,2]*d[2,1]")


@pytest.mark.parametrize(
    "gens, expected",
    [
        (["d[1,1]"], ["d[1,1]"]),
        (["d[1,2]", "d[2,1]"], ["d[1,2]", "d[2,1]"]),
        (["d[1,1]", "d[2,2]"], ["d[1,1]", "d[2,2]", "d[1,2]*d[2,1]"]),
        (["d[1,1]+d[2,2]", "d[2,2]"], ["d[1,1]", "d[2,2]", "d[1,2]*d[2,1]"]),
    ],
)
def test_reduced_bases(alg2, gens, expected):
    G = buchberger(ideal(alg2, *gens), trace=True)
    assert G.format() == expected
    assert G.spolys_reduce_to_zero()
    assert G.is_minimal()
    assert G.verify_certificates()
    assert all(G.contains(g) for g in G.generators)
    assert all(g.lc(G.order) == 1 for g in G.elements)


def test_q1_degenerates(alg2_q1):
    G = buchberger(ideal(alg2_q1, "d[1,1]", "d[2,2]"))
    assert G.format() == ["d[1,1]", "d[2,2]"]


def test_trace_records_adjoined_element(alg2):
    G = buchberger(ideal(alg2, "d[1,1]", "d[2,2]"), trace=True)
    assert [t.describe() for t in G.trace] == [
        "pair (0,1) -> adjoined as element 2",
        "pair (0,2) -> reduced to zero",
        "pair (1,2) -> reduced to zero",
    ]


def test_shuffled_generators_give_same_basis(alg3):
    rng = random.Random(4)
    gens = ["d[1,1]", "d[2,2]", "d[3,3] + d[1,2]", "d[2,1]*d[3,2]"]
    ref = buchberger(ideal(alg3, *gens), certificates=False).elements
    for _ in range(4):
        rng.shuffle(gens)
        assert buchberger(ideal(alg3, *gens), certificates=False).elements == ref


def test_unit_ideal(alg2):
    G = buchberger(ideal(alg2, "d[1,1] + 1", "d[1,1]"))
    assert G.format() == ["1"]
    assert G.is_unit()
    assert G.verify_certificates()


def test_rejects_unsolvable_order(alg2):
    with pytest.raises(OrderNotSolvable):
        buchberger(ideal(alg2, "d[1,1]", order=PAPER_LEX))
    with pytest.raises(OrderNotSolvable):
        buchberger(ideal(alg2, "d[1,1]", order=OrderSpec.block([(1, 1), (2, 2)])))


def test_presentation_validation(alg2, alg3):
    with pytest.raises(ValueError):
        IdealPresentation([])
    with pytest.raises(ValueError):
        IdealPresentation([alg2.zero()])
    with pytest.raises(ValueError):
        IdealPresentation([alg2.one(), alg3.one()])


def test_membership_examples(alg2):
    P = alg2.parse
    L11 = ideal(alg2, "d[1,1]")
    assert ideal_membership(P("d[2,1]*d[1,1]"), L11)
    assert not ideal_membership(P("d[1,2]"), L11)
    assert ideal_membership(P("(q-1)*d[1,2]*d[2,1]"), ideal(alg2, "d[1,1]", "d[2,2]"))


@pytest.mark.parametrize("gens", [["d[1,1]"], ["d[1,2]", "d[2,1]"], ["d[1,1]", "d[2,2]"]])
def test_membership_matches_bounded_oracle(alg2, gens):
    L = ideal(alg2, *gens)
    G = buchberger(L, certificates=False)
    oracle = BoundedMembershipOracle(L.generators, cap=4)
    rng = random.Random(len(gens))
    members = 0
    for _ in range(40):
        if rng.random() < 0.5:
            f = alg2.zero()
            for g in L.generators:
                f = f + random_element(rng, alg2, max_degree=2) * g
        else:
            f = random_element(rng, alg2, max_degree=3)
        if f.degree > 3:
            continue
        verdict = oracle.decide(f)
        assert verdict is not None
        assert G.contains(f) == verdict
        members += verdict
    assert members > 0


def test_normal_form_is_fixpoint(alg3):
    rng = random.Random(8)
    G = buchberger(ideal(alg3, "d[1,1]", "d[3,3]", "d[2,2]"), certificates=False)
    for _ in range(20):
        r = G.reduce(random_element(rng, alg3))
        assert G.reduce(r) == r


def test_oracle_inconclusive_for_inhomogeneous(alg2):
    oracle = BoundedMembershipOracle([alg2.parse("d[1,1] + 1")], cap=2)
    assert oracle.decide(alg2.parse("d[1,2]*d[1,1] + d[1,2]")) is True
    assert oracle.decide(alg2.parse("d[1,2]")) is None
