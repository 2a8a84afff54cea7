"""Rule catalogs for the fractal cloud and the SAT/Q-SAT modules built on it.

Rules are written in arrow notation (see :func:`fractalsat.kinematics.meta`):
``->`` / ``<-`` move at speed 1, ``=>`` / ``<=`` at speed 3, ``|`` marks
stationary signals and ``~>`` / ``<~`` (speed 1/3) is the adder's carry marker.  Only one
orientation is written down; :func:`mirror_close` supplies the other.

Base names used below::

    w      until inhibitor          b      variable delay inhibitor
    g, g'  connective inhibitor and its reflected form
    E, A   quantifier signals       EL, ER, AL, AR   quantifier stationaries
    add    adder set-up signal      addL0 .. addR1   adder stationaries (carry 0/1)
    z0     leaf digit emitter       lo0, hi0         leaf marker emitters
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .engine import validate
from .kinematics import LEFT, RIGHT, STATIONARY, MetaSignal, meta
from .machine import CollisionRule, RuleSet

QSAT, SHARPSAT, ENUMSAT = "qsat", "sharpsat", "enumsat"
PROBLEMS = (QSAT, SHARPSAT, ENUMSAT)

_STATIONARY_MIRROR = {"EL": "ER", "ER": "EL", "AL": "AR", "AR": "AL",
                      "addL0": "addR0", "addR0": "addL0", "addL1": "addR1", "addR1": "addL1"}

LENS_STATIONARIES = ["start", "startoff", "x", "xoff", "EL", "ER", "AL", "AR"]
ADDER_STATIONARIES = ["addL0", "addL1", "addR0", "addR1"]
# beam signals with bespoke split behaviour: accelerated by <=start but never
# given the generic decelerate-and-split rule
BESPOKE_BEAM = ["stop", "w", "a", "x", "b", "E", "A", "add"]
PASSTHROUGH_BEAM = ["and", "or", "not", "g", "t", "f", "s", "c", "v", "z0", "lo0", "hi0"]


class MirrorConflict(ValueError):
    pass


def _rules(prefix: str, where: str, rows: Iterable[str]) -> list[CollisionRule]:
    return [CollisionRule.parse(text, f"{prefix}.{i}", where) for i, text in enumerate(rows, 1)]


def mirror_meta(m: MetaSignal) -> MetaSignal:
    if m.direction == STATIONARY:
        return MetaSignal(_STATIONARY_MIRROR.get(m.base, m.base))
    return MetaSignal(m.base, LEFT if m.direction == RIGHT else RIGHT, m.tier)


def mirror_rule(r: CollisionRule) -> CollisionRule:
    return CollisionRule(frozenset(map(mirror_meta, r.lhs)), frozenset(map(mirror_meta, r.rhs)),
                         r.id + "~", f"mirror of {r.id}")


def mirror_close(rules: RuleSet | Iterable[CollisionRule]) -> RuleSet:
    rules = list(rules)
    out = RuleSet(list(rules))
    for r in rules:
        m = mirror_rule(r)
        existing = out.lookup(m.lhs)
        if existing is None:
            out.add(m)
        elif existing.rhs != m.rhs:
            raise MirrorConflict(f"mirror of {r.id} ({m.text()}) clashes with {existing.id} ({existing.text()})")
    return out


def accelerate_rules(metas: Sequence[str]) -> list[CollisionRule]:
    """``->s, <=start -> <=start, =>s`` for every beam signal."""
    return [CollisionRule.parse(f"->{s}, <=start -> <=start, =>{s}", f"lens.acc.{s}",
                                "lens meta-rule (acceleration)") for s in metas]


def lens_rules(passthrough: Sequence[str], stationaries: Sequence[str]) -> list[CollisionRule]:
    """Acceleration by ``<=start`` plus decelerate-and-split on every stationary."""
    for name in passthrough:
        if name in BESPOKE_BEAM:
            raise ValueError(f"{name} has bespoke split rules and cannot use the generic lens")
        if name.startswith("|"):
            raise ValueError(f"stationary {name} cannot be a lens passthrough")
    out = accelerate_rules(passthrough)
    for name in passthrough:
        for st in stationaries:
            out.append(CollisionRule.parse(f"=>{name}, |{st} -> <-{name}, |{st}, ->{name}",
                                           f"lens.split.{name}.{st}", "lens meta-rule (split)"))
    return out


def fractal_rules() -> RuleSet:
    rows = _rules("fractal", "App. A, Constructing the fractal", [
        "|wall, <=start -> |wall, =>start",
        "->start, <=start -> <=start, <-start, |start, ->start, =>start",
        "=>start, |wall -> <=start, |wall",
        "=>start, <-start -> <=start, <-start, |start, ->start, =>start",
    ])
    return mirror_close(rows)


def until_rules() -> list[CollisionRule]:
    return _rules("until", "App. A, Stopping the fractal", [
        "=>w, <-start -> <-startoff, =>w",
        "=>w, |start -> |startoff",
        "=>w, |startoff -> <-w, |startoff, ->w",
        "=>stop, <-start -> <-startoff, =>stop",
        "=>stop, <-startoff -> <-start, =>stop",
        "=>stop, |startoff -> <-stop, |start, ->stop",
        "=>stop, |start -> |start, =>stop",
        "=>stop, ->start -> ->startoff",
        "=>start, <-startoff ->",
    ])


def decide_rules() -> list[CollisionRule]:
    return _rules("decide", "App. A, Activation of the decision tree", [
        "=>a, |start -> |x",
        "=>a, |x -> <-a, |x, ->a",
    ])


def var_rules() -> list[CollisionRule]:
    return _rules("var", "App. A, Representation of a variable", [
        "=>b, |x -> |xoff",
        "=>b, |xoff -> <-b, |xoff, ->b",
        "=>x, |x -> <-f, |x, ->t",
        "=>x, |xoff -> <-x, |x, ->x",
    ])


def eval_rules() -> list[CollisionRule]:
    rows = [
        "=>t, |start -> <-T, |start",
        "=>f, |start -> <-F, |start",
        "=>g, |start -> <-g', |start",
        "=>and, <-T -> =>and'",
        "=>f', <-T -> =>f",
        "=>and', <-T -> =>t",
        "=>and, <-F -> =>f'",
        "=>f', <-F -> =>f",
        "=>and', <-F -> =>f",
        "=>or, <-T -> =>t'",
        "=>t', <-T -> =>t",
        "=>or', <-T -> =>t",
        "=>or, <-F -> =>or'",
        "=>t', <-F -> =>t",
        "=>or', <-F -> =>f",
        "=>not, <-T -> =>f",
        "=>not, <-F -> =>t",
    ]
    for op in ("and", "or", "not"):
        rows.append(f"=>{op}, <-g' -> =>{op}0")
    for op in ("and", "or", "not"):
        for v in ("T", "F"):
            rows.append(f"=>{op}0, <-{v} -> <-{v}, =>{op}")
    return _rules("eval", "App. A, Evaluation", rows)


def store_rules() -> list[CollisionRule]:
    return _rules("store", "App. A, Storing the results", [
        "=>s, <-T -> =>T",
        "=>s, <-F -> =>F",
        "=>T, |start -> |t",
        "=>F, |start -> |f",
    ])


def qsat_reduce_rules() -> list[CollisionRule]:
    init = _rules("qsat.init", "App. B.1, Setting up the reduce stage", [
        "|x, <=E -> |ER",
        "=>E, |x -> |EL",
        "|x, <=A -> |AR",
        "=>A, |x -> |AL",
    ])
    split = _rules("qsat.split", "App. A, Case of quantifiers signals", [
        f"=>{q}, |{st} -> <-{q}, |{st}, ->{q}" for q in ("E", "A") for st in ("EL", "ER", "AL", "AR")
    ])
    exec_ = _rules("qsat.exec", "App. B.1, Executing the reduce stage (initiation)", [
        "=>c, |t -> <-t",
        "=>c, |f -> <-f",
    ])
    rows = []
    for q, op in (("E", any), ("A", all)):
        for a in ("t", "f"):
            for b in ("t", "f"):
                res = "t" if op((a == "t", b == "t")) else "f"
                rows.append(f"->{a}, |{q}L, <-{b} -> <-{res}")
    agg = _rules("qsat.agg", "App. B.1, Performing the disjunction/conjunction (L rows)", rows)
    return init + split + exec_ + agg


def _adder_rows() -> tuple[list[str], list[str]]:
    transcribed, completion = [], []
    for c in (0, 1):
        for d1 in (0, 1):
            for d2 in (0, 1):
                s, c2 = (d1 + d2 + c) % 2, (d1 + d2 + c) // 2
                transcribed.append(f"->{d1}, |addR{c}, <-{d2} -> |addR{c2}, ->{s}")
    for c in (0, 1):
        for d in (0, 1):
            s, c2 = (d + c) % 2, (d + c) // 2
            transcribed.append(f"->{d}, |addR{c}, <-lo -> |addR{c2}, ->{s}")
            completion.append(f"->lo, |addR{c}, <-{d} -> |addR{c2}, ->{s}")
    for c in (0, 1):
        for d in (0, 1):
            s, c2 = (d + c) % 2, (d + c) // 2
            transcribed.append(f"->{d}, |addR{c} -> |addR{c2}, ->{s}")
            completion.append(f"|addR{c}, <-{d} -> |addR{c2}, ->{s}")
    transcribed += [
        "->lo, |addR0, <-lo -> |addR0, ->lo",
        "->lo, |addR1, <-lo -> |addR0, ->1, ~>lo",
        "->lo, |addR0 -> |addR0, ->lo",
        "->lo, |addR1 -> |addR0, ->1, ~>lo",
        "~>lo, <-hi -> <-hi, ->lo",
        "->hi, |addR0 -> ->hi",
    ]
    completion += [
        "|addR0, <-lo -> |addR0, ->lo",
        "|addR1, <-lo -> |addR0, ->1, ~>lo",
        "->hi, |addR0, <-hi -> ->hi",
    ]
    return transcribed, completion


def sharpsat_rules() -> list[CollisionRule]:
    init = _rules("sharp.init", "App. B.2, Setting up the reduce stage", [
        "=>add, |x -> |addL0",
        "|x, <=add -> |addR0",
    ])
    leaf = []
    for v in ("t", "f"):
        digit = "1" if v == "t" else "0"
        leaf += [f"=>z0, |{v} -> <-{digit}, |{v}", f"=>lo0, |{v} -> <-lo, |{v}", f"=>hi0, |{v} -> <-hi"]
    exec_ = _rules("sharp.exec", "App. B.2, Executing the reduce stage", leaf)
    transcribed, completion = _adder_rows()
    adder = _rules("sharp.add", "App. B.2, binary adder (R rows)", transcribed)
    extra = _rules("sharp.addx", "App. B.2, adder completion rows "
                   "(right operand alone, ending first)", completion)
    return init + exec_ + adder + extra


def enumsat_rules() -> list[CollisionRule]:
    return _rules("enum", "App. B.3, ENUM-SAT reduce stage", [
        "=>v, |t -> <-v1, |v",
        "->v1, <=t -> |t, ->v1",
        "=>v, |f -> <-v0",
        "->v0, <=t -> ->v0",
        "->v1, <=v -> |v",
        "->v1, <=f -> |f, ->v1",
        "->v0, <=v ->",
        "->v0, <=f -> ->v0",
    ])


def _with_defaults(specific: list[CollisionRule], defaults: list[CollisionRule]) -> list[CollisionRule]:
    """Generic lens rules apply only where no bespoke rule is given."""
    taken = {r.lhs for r in specific}
    kept = []
    for r in defaults:
        mirrored = mirror_rule(r).lhs
        if r.lhs in taken or mirrored in taken:
            continue
        taken.add(r.lhs)
        kept.append(r)
    return specific + kept


def assemble_ruleset(problem: str) -> RuleSet:
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEMS)}")
    specific = list(fractal_rules()) + until_rules() + decide_rules() + var_rules() + eval_rules() + store_rules()
    beam = list(PASSTHROUGH_BEAM)
    bespoke = ["stop", "w", "a", "x", "b"]
    if problem == QSAT:
        specific += qsat_reduce_rules()
        bespoke += ["E", "A"]
        stationaries = LENS_STATIONARIES
    elif problem == SHARPSAT:
        specific += sharpsat_rules()
        bespoke += ["add"]
        stationaries = LENS_STATIONARIES + ADDER_STATIONARIES
    else:
        specific += enumsat_rules()
        stationaries = LENS_STATIONARIES
    defaults = accelerate_rules(bespoke) + lens_rules(beam, stationaries)
    if problem == SHARPSAT:
        defaults += [CollisionRule.parse(f"=>add, |{st} -> <-add, |{st}, ->add", f"lens.split.add.{st}",
                                         "lens meta-rule (split on adder stationaries)")
                     for st in ADDER_STATIONARIES]
    rs = mirror_close(_with_defaults(specific, defaults))
    rs.name = problem
    problems = validate(rs)
    if problems:
        raise ValueError("assembled rule set is not well formed:\n" + "\n".join(problems))
    return rs


def middle_ruleset() -> RuleSet:
    return RuleSet(_rules("middle", "middle construction (fractal subset)", [
        "=>start, |wall -> <=start, |wall",
        "->start, <=start -> |start",
    ]), name="middle")
