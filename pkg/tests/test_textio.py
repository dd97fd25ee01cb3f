import json
import random

import pytest

from dqalg.parsing import ExpressionSyntaxError, IndexOutOfRange, split_top_level
from dqalg.pbw import DEG_PAPER_LEX, PAPER_LEX, DqAlgebra
from dqalg.scalarfield import FieldConfig, InversionOfZero, ZeroQ
from dqalg.textio import element_from_json, element_to_json, format_element, parse_element
from helpers import random_element


def test_normalizes_on_parse(alg2):
    assert str(parse_element("d[2,2]*d[1,1]", alg2)) == "d[1,1]*d[2,2] + (q-1)*d[1,2]*d[2,1]"
    assert parse_element("1", alg2) == alg2.one()
    assert parse_element("(q-1)*d[1,2]*d[2,1] + d[1,1]*d[2,2]", alg2) == parse_element("d[2,2]*d[1,1]", alg2)


@pytest.mark.parametrize(
    "src, shown",
    [
        ("-d[1,1] + 2*d[2,2]", "2*d[2,2] - d[1,1]"),
        ("d[1,1]/q", "1/q*d[1,1]"),
        ("(q+1)/(q-1)*d[1,2]", "(q+1)/(q-1)*d[1,2]"),
        ("-(q-1)*d[1,2] - 3", "-(q-1)*d[1,2] - 3"),
        ("d[1,2]^0", "1"),
        ("d[1,1] - d[1,1]", "0"),
        ("q^2 * d[2,1] ^ 2", "q^2*d[2,1]^2"),
    ],
)
def test_print_forms(alg2, src, shown):
    f = parse_element(src, alg2)
    assert format_element(f) == shown
    assert parse_element(shown, alg2) == f


@pytest.mark.parametrize(
    "src, pos",
    [("d[1,1] +", 8), ("d[1 1]", 4), ("d[1,1]*)", 7), ("2 ! d[1,1]", 2), ("d[1,1]^q", 7)],
)
def test_syntax_errors_carry_position(alg2, src, pos):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_element(src, alg2)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_bad_index_and_division(alg2):
    with pytest.raises(IndexOutOfRange):
        parse_element("d[3,1]", alg2)
    with pytest.raises(ExpressionSyntaxError):
        parse_element("1/d[1,1]", alg2)
    with pytest.raises(InversionOfZero):
        parse_element("d[1,1]/(q-q)", alg2)


def test_zero_q_rejected():
    with pytest.raises(ZeroQ):
        DqAlgebra(2, FieldConfig.specialized("0"))


def test_specialized_field_evaluates_coefficients():
    alg = DqAlgebra(2, FieldConfig.specialized(2))
    assert str(parse_element("d[2,2]*d[1,1]", alg)) == "d[1,1]*d[2,2] + d[1,2]*d[2,1]"
    assert str(parse_element("q/4*d[1,1]", alg)) == "1/2*d[1,1]"


@pytest.mark.parametrize("order", [PAPER_LEX, DEG_PAPER_LEX])
def test_round_trip_random_elements(alg2, order):
    rng = random.Random(42)
    for _ in range(200):
        e = random_element(rng, alg2, max_degree=3, max_terms=4)
        assert parse_element(format_element(e, order), alg2) == e


def test_json_round_trip(alg3):
    rng = random.Random(1)
    for _ in range(50):
        e = random_element(rng, alg3)
        doc = json.loads(json.dumps(element_to_json(e)))
        assert doc["n"] == 3 and doc["order"] == "paper-lex"
        assert element_from_json(doc, alg3) == e


def test_json_schema_shape(alg2):
    doc = element_to_json(parse_element("(q/2-1)*d[1,2]", alg2))
    assert doc["terms"] == [{"coeff": {"num": [-1, "1/2"], "den": [1]}, "exp": [[0, 1], [0, 0]]}]


def test_split_top_level():
    assert split_top_level("d[1,1], d[2,2]*(q+1) ,d[1,2]") == ["d[1,1]", "d[2,2]*(q+1)", "d[1,2]"]
    assert split_top_level(" ") == []
