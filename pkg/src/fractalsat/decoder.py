"""Read answers off a quiescent trace.

Each decoder looks only at its own signal families and ignores everything
else that survives (walls, switched-off fractal stationaries, ...):

* verdict: bases ``t`` / ``f``
* count: bases ``0`` / ``1`` / ``lo`` / ``hi``
* assignments: stationary bases ``v`` / ``t`` / ``f``
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .engine import QUIESCENT, Trace
from .formula import Assignment
from .kinematics import Signal

VERDICT_FAMILY = {"t", "f"}
COUNT_FAMILY = {"0", "1", "lo", "hi"}
ENUM_FAMILY = {"v", "t", "f"}
LEAF_RULE = "enum.1"


class MalformedRun(RuntimeError):
    pass


def _require_quiescent(tr: Trace) -> None:
    if tr.terminated != QUIESCENT:
        raise MalformedRun(f"run did not quiesce ({tr.terminated})")


def decode_verdict(tr: Trace) -> bool:
    _require_quiescent(tr)
    found = [s for s in tr.survivors() if s.meta.base in VERDICT_FAMILY and not s.meta.stationary]
    if len(found) != 1:
        raise MalformedRun(f"expected one surviving truth signal, found {len(found)}: "
                           + ", ".join(s.meta.name for s in found))
    return found[0].meta.base == "t"


def _emission_key(s: Signal) -> Fraction:
    # constant along the trajectory; smaller means emitted earlier (further ahead)
    v = s.speed
    ahead = s.birth_pos - v * s.birth_time
    return -ahead if v > 0 else ahead


def count_stream(tr: Trace) -> list[str]:
    found = [s for s in tr.survivors() if s.meta.base in COUNT_FAMILY]
    directions = {s.meta.direction for s in found}
    if len(directions) > 1 or any(s.meta.stationary for s in found):
        raise MalformedRun("count signals do not form a single outgoing stream")
    return [s.meta.base for s in sorted(found, key=_emission_key)]


def decode_count(tr: Trace) -> int:
    _require_quiescent(tr)
    stream = count_stream(tr)
    if stream.count("lo") != 1 or stream.count("hi") != 1:
        raise MalformedRun(f"count stream lacks its markers: {stream}")
    lo, hi = stream.index("lo"), stream.index("hi")
    if not lo < hi == len(stream) - 1:
        raise MalformedRun(f"stray signals around the markers: {stream}")
    digits = stream[:lo]
    if not digits:
        raise MalformedRun("count stream has no digits")
    return sum(1 << i for i, d in enumerate(digits) if d == "1")


def _leaf_ends(tr: Trace) -> dict[Fraction, bool]:
    """Leaf position -> True when the beam was frozen leftwards of it."""
    ends = {}
    for ev in tr.events:
        if ev.rule in (LEAF_RULE, LEAF_RULE + "~"):
            ends[ev.pos] = ev.rule == LEAF_RULE
    return ends


def beams(tr: Trace, n: int) -> list[tuple[Fraction, Fraction, Assignment]]:
    """Stored assignment beams as (left end, right end, bits), left to right.

    A beam freezes away from its leaf, so the variable order along space
    depends on which end the leaf is."""
    _require_quiescent(tr)
    leaf_ends = _leaf_ends(tr)
    stat = sorted((s for s in tr.survivors() if s.meta.stationary and s.meta.base in ENUM_FAMILY),
                  key=lambda s: s.birth_pos)
    out = []
    i = 0
    while i < len(stat):
        if stat[i].meta.base != "v":
            raise MalformedRun(f"stored bit outside a beam at x={stat[i].birth_pos}")
        j = i + 1
        while j < len(stat) and stat[j].meta.base != "v":
            j += 1
        if j == len(stat):
            raise MalformedRun("unterminated beam")
        bits = tuple(s.meta.base == "t" for s in stat[i + 1:j])
        left, right = stat[i].birth_pos, stat[j].birth_pos
        if leaf_ends.get(left) is False:
            bits = bits[::-1]
        elif leaf_ends.get(right) is not True:
            raise MalformedRun(f"beam [{left}, {right}] is not anchored on a leaf")
        if len(bits) != n:
            raise MalformedRun(f"beam holds {len(bits)} bits, expected {n}")
        out.append((left, right, bits))
        i = j + 1
    return out


def decode_assignments(tr: Trace, n: int) -> set[Assignment]:
    return {bits for _, _, bits in beams(tr, n)}


def first_solution(tr: Trace, n: int) -> Optional[Assignment]:
    found = beams(tr, n)
    return found[0][2] if found else None
