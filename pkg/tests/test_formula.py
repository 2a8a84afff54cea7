import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractalsat.formula import (
    And, EXISTS, FORALL, FormulaError, Not, Or, Var, format_formula, ncon, oracle_count, oracle_enum,
    oracle_qsat, parse,
)

from conftest import random_formula


def test_parse_running_example():
    f = parse("E x1 A x2 A x3 : (x1 & !x2) | x3")
    assert f.prefix == ((EXISTS, 1), (FORALL, 2), (FORALL, 3))
    assert f.matrix == Or(And(Var(1), Not(Var(2))), Var(3))


def test_parse_small():
    f = parse("E x1 : x1")
    assert f.prefix == ((EXISTS, 1),) and f.matrix == Var(1)


def test_precedence():
    assert parse(": x1 | x2 & !x3").matrix == Or(Var(1), And(Var(2), Not(Var(3))))
    assert parse(": !x1 & x2").matrix == And(Not(Var(1)), Var(2))


@pytest.mark.parametrize("text", ["E x1 : x2", "E x1 : x1 &", "E x1 E x1 : x1", "E x2 : x2", "E x1 x1", ": (x1"])
def test_parse_errors(text):
    with pytest.raises(FormulaError):
        parse(text)


def test_error_location():
    with pytest.raises(FormulaError) as exc:
        parse("E x1 :\n  x1 & x2")
    assert (exc.value.line, exc.value.col) == (2, 8)


def test_missing_prefix_uses_vars():
    f = parse(": x1", n_vars=3)
    assert f.n == 3 and all(q == EXISTS for q, _ in f.prefix)


@pytest.mark.parametrize("text,expected", [("(x1 & !x2) | x3", 3), ("x1 & !x2", 2), ("x5", 0)])
def test_ncon(text, expected):
    assert ncon(parse(": " + text).matrix) == expected


def test_oracles():
    assert oracle_qsat(parse("E x1 A x2 A x3 : (x1 & !x2) | x3")) is False
    assert oracle_qsat(parse("E x1 : x1")) is True
    assert oracle_qsat(parse("A x1 : x1")) is False
    assert oracle_count(parse(": (x1 & !x2) | x3").matrix, 3) == 5
    assert oracle_enum(parse(": x1").matrix, 1) == {(True,)}
    assert oracle_count(parse(": x1 & !x1").matrix, 1) == 0
    assert oracle_enum(parse(": x1 & !x1").matrix, 1) == set()


formulas = st.integers(min_value=0, max_value=2**32).map(lambda s: random_formula(random.Random(s), 4, 8))


@given(formulas)
def test_format_parse_round_trip(f):
    assert parse(format_formula(f)) == f


@given(formulas)
def test_oracle_relations(f):
    assert oracle_count(f.matrix, f.n) == len(oracle_enum(f.matrix, f.n))
    exists = type(f)(tuple((EXISTS, i) for _, i in f.prefix), f.matrix)
    assert oracle_qsat(exists) == (oracle_count(f.matrix, f.n) > 0)
