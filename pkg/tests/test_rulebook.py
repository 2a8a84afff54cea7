import re
from pathlib import Path

import pytest

from fractalsat.engine import validate
from fractalsat.kinematics import meta
from fractalsat.machine import CollisionRule, RuleSet
from fractalsat.rulebook import (
    MirrorConflict, PROBLEMS, assemble_ruleset, decide_rules, enumsat_rules, eval_rules, fractal_rules,
    lens_rules, mirror_close, mirror_rule, qsat_reduce_rules, sharpsat_rules, store_rules, until_rules,
    var_rules,
)


def rule(text, rid="r"):
    return CollisionRule.parse(text, rid, "test")


def contains(rules, text):
    r = rule(text)
    return any(x.lhs == r.lhs and x.rhs == r.rhs for x in rules)


def test_mirror_examples():
    closed = mirror_close([rule("|wall, <=start -> |wall, =>start")])
    assert contains(closed.rules, "=>start, |wall -> <=start, |wall")
    fixed = mirror_close([rule("|start, |wall -> |start")])
    assert len(fixed.rules) == 1
    closed = mirror_close([rule("->t, |EL, <-f -> <-t")])
    assert contains(closed.rules, "->f, |ER, <-t -> ->t")


def test_mirror_idempotent_and_involutive():
    rs = mirror_close(eval_rules())
    assert {r.text() for r in mirror_close(rs).rules} == {r.text() for r in rs.rules}
    for r in rs.rules:
        assert mirror_rule(mirror_rule(r)).text() == r.text()


def test_mirror_conflict():
    with pytest.raises(MirrorConflict):
        mirror_close([rule("->a, <-b -> |c", "r1"), rule("->b, <-a -> |d", "r2")])


def test_lens_examples():
    rules = lens_rules(["g"], ["x"])
    assert contains(rules, "->g, <=start -> <=start, =>g")
    assert contains(rules, "=>g, |x -> <-g, |x, ->g")
    with pytest.raises(ValueError):
        lens_rules(["|x"], ["x"])
    with pytest.raises(ValueError):
        lens_rules(["stop"], ["x"])


def test_transcribed_catalog_examples():
    assert contains(fractal_rules().rules, "->start, <=start -> <=start, <-start, |start, ->start, =>start")
    assert contains(until_rules(), "=>start, <-startoff ->")
    assert contains(eval_rules(), "=>and, <-T -> =>and'")
    assert contains(eval_rules(), "=>and', <-F -> =>f")
    assert contains(sharpsat_rules(), "->1, |addR0, <-1 -> |addR1, ->0")
    assert contains(enumsat_rules(), "=>v, |t -> <-v1, |v")


def test_catalog_sizes():
    assert len(until_rules()) == 9
    assert len(decide_rules()) == 2
    assert len(var_rules()) == 4
    assert len(store_rules()) == 4
    assert len(enumsat_rules()) == 8
    aggregation = [r for r in qsat_reduce_rules() if r.id.startswith("qsat.agg")]
    assert len(mirror_close(aggregation).rules) == 16


@pytest.mark.parametrize("problem", PROBLEMS)
def test_assembled_rulesets_clean(problem):
    rs = assemble_ruleset(problem)
    assert validate(rs) == []
    assert len({r.lhs for r in rs.rules}) == len(rs.rules)
    for r in rs.rules:
        assert r.provenance


def test_sharpsat_has_no_aggregation():
    rs = assemble_ruleset("sharpsat")
    assert not any(r.id.startswith("qsat.") for r in rs.rules)
    assert rs.lookup(frozenset({meta("->t"), meta("|EL"), meta("<-f")})) is None


def test_catalog_text_format():
    line = assemble_ruleset("qsat").catalog().splitlines()[0]
    assert re.match(r".+ -> .*  # \S+: .+", line)


@pytest.mark.parametrize("problem", PROBLEMS)
def test_shipped_catalog_in_sync(problem):
    shipped = Path(__file__).parent.parent / "docs" / f"rules-{problem}.txt"
    assert shipped.read_text() == assemble_ruleset(problem).catalog()
