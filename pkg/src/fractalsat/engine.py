"""Deterministic event-driven execution of a signal machine.

Live signals are kept in spatial order as a doubly linked list.  Between two
collisions no signal overtakes another, so the next collision always involves
neighbours; only adjacent pairs are scheduled.  Candidate meetings sit in a
heap keyed by the exact ``(time, pos)`` and are discarded lazily once the pair
is no longer adjacent.
"""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .kinematics import Configuration, MetaSignal, Signal, fmt, meet, position_at
from .machine import CollisionRule, RuleSet

BLANK = "blank"
QUIESCENT, BUDGET_EXHAUSTED, HORIZON_REACHED = "quiescent", "budget_exhausted", "horizon_reached"

DEFAULT_HORIZON = Fraction(2)
DEFAULT_BUDGET = 10_000_000


class RuleSetAmbiguity(ValueError):
    pass


@dataclass(frozen=True)
class CollisionEvent:
    index: int
    time: Fraction
    pos: Fraction
    incoming: tuple[int, ...]
    outgoing: tuple[int, ...]
    rule: str


@dataclass
class Trace:
    initial: Configuration
    events: list[CollisionEvent] = field(default_factory=list)
    signals: dict[int, Signal] = field(default_factory=dict)
    birth: dict[int, Optional[int]] = field(default_factory=dict)
    death: dict[int, int] = field(default_factory=dict)
    terminated: str = QUIESCENT

    def survivors(self) -> list[Signal]:
        return [s for i, s in sorted(self.signals.items()) if i not in self.death]

    def death_time(self, sid: int) -> Optional[Fraction]:
        ev = self.death.get(sid)
        return None if ev is None else self.events[ev].time

    def names(self, ids: Iterable[int]) -> str:
        metas = sorted((self.signals[i].meta for i in ids), key=lambda m: (m.speed, m.base))
        return ",".join(m.name for m in metas)

    def lines(self) -> list[str]:
        out = list(self.initial.lines())
        for ev in self.events:
            out.append(
                f"EVENT t={fmt(ev.time)} x={fmt(ev.pos)} in={self.names(ev.incoming)} "
                f"out={self.names(ev.outgoing)} rule={ev.rule}"
            )
        out.append(f"END terminated={self.terminated} events={len(self.events)}")
        return out

    def dumps(self) -> str:
        return "\n".join(self.lines()) + "\n"


def match_rule(rules: RuleSet, incoming: Iterable[MetaSignal]) -> tuple[frozenset, str]:
    key = frozenset(incoming)
    rule = rules.lookup(key)
    if rule is None:
        return key, BLANK
    return rule.rhs, rule.id


def validate(rules: RuleSet) -> list[str]:
    """Well-formedness violations (empty list when the rule set is sound)."""
    problems = []
    seen: dict[frozenset, CollisionRule] = {}
    for r in rules:
        if len(r.lhs) < 2:
            problems.append(f"{r.id}: left side has fewer than two meta-signals")
        for side, metas in (("left", r.lhs), ("right", r.rhs)):
            speeds = Counter(m.speed for m in metas)
            dup = [fmt(v) for v, c in speeds.items() if c > 1]
            if dup:
                problems.append(f"{r.id}: {side} side repeats speed {','.join(dup)}: {r.text()}")
        other = seen.get(r.lhs)
        if other is not None:
            if other.rhs != r.rhs:
                problems.append(f"{r.id}: ambiguous with {other.id} on {r.text()} vs {other.text()}")
            else:
                problems.append(f"{r.id}: duplicates {other.id}")
        else:
            seen[r.lhs] = r
    return problems


class Machine:
    """Mutable run state; :func:`run` is the usual entry point."""

    def __init__(self, rules: RuleSet, init: Configuration):
        self.rules = rules
        self.trace = Trace(initial=init)
        self.now = Fraction(0)
        self._next_id = 0
        self._prev: dict[int, Optional[int]] = {}
        self._next: dict[int, Optional[int]] = {}
        self._head: Optional[int] = None
        self._heap: list = []
        ordered: list[int] = []
        for pos, m in init.signals():
            # at equal position, slower signals end up on the left just after t=0
            ordered.append(self._new_signal(m, pos, Fraction(0), None))
        ordered.sort(key=lambda i: (self.trace.signals[i].birth_pos, self.trace.signals[i].speed))
        self._link(None, ordered, None)

    def _new_signal(self, m: MetaSignal, pos: Fraction, t: Fraction, event: Optional[int]) -> int:
        sid = self._next_id
        self._next_id += 1
        self.trace.signals[sid] = Signal(m, pos, t, sid)
        self.trace.birth[sid] = event
        return sid

    def _link(self, left: Optional[int], ids: list[int], right: Optional[int]) -> None:
        chain = [left] + ids + [right]
        for a, b in zip(chain, chain[1:]):
            if a is None:
                self._head = b
            else:
                self._next[a] = b
            if b is not None:
                self._prev[b] = a
        for a, b in zip(chain, chain[1:]):
            if a is not None and b is not None:
                self._schedule(a, b)

    def _schedule(self, a: int, b: int) -> None:
        sa, sb = self.trace.signals[a], self.trace.signals[b]
        hit = meet(sa, sb, self.now)
        if hit is not None:
            t, x = hit
            heapq.heappush(self._heap, (t, x, a, b))

    def _alive(self, sid: int) -> bool:
        return sid not in self.trace.death

    def peek(self) -> Optional[tuple[Fraction, Fraction, int, int]]:
        heap = self._heap
        while heap:
            t, x, a, b = heap[0]
            if self._alive(a) and self._alive(b) and self._next.get(a) == b:
                return heap[0]
            heapq.heappop(heap)
        return None

    def step(self) -> Optional[CollisionEvent]:
        top = self.peek()
        if top is None:
            return None
        t, x, a, b = heapq.heappop(self._heap)
        self.now = t
        sig = self.trace.signals
        first, last = a, b
        while True:
            p = self._prev.get(first)
            if p is None or position_at(sig[p], t) != x:
                break
            first = p
        while True:
            n = self._next.get(last)
            if n is None or position_at(sig[n], t) != x:
                break
            last = n
        group = [first]
        while group[-1] != last:
            group.append(self._next[group[-1]])
        left, right = self._prev.get(first), self._next.get(last)

        out_metas, rule = match_rule(self.rules, (sig[i].meta for i in group))
        index = len(self.trace.events)
        for i in group:
            self.trace.death[i] = index
        born = [self._new_signal(m, x, t, index) for m in sorted(out_metas, key=lambda m: (m.speed, m.base))]
        event = CollisionEvent(index, t, x, tuple(group), tuple(born), rule)
        self.trace.events.append(event)
        for i in group:
            self._prev.pop(i, None)
            self._next.pop(i, None)
        if left is None and self._head == first:
            self._head = None
        self._link(left, born, right)
        return event


def run(rules: RuleSet, init: Configuration, budget: int = DEFAULT_BUDGET,
        horizon: Fraction = DEFAULT_HORIZON) -> Trace:
    if budget < 1:
        raise ValueError("budget must be at least 1")
    horizon = Fraction(horizon)
    m = Machine(rules, init)
    while True:
        top = m.peek()
        if top is None:
            m.trace.terminated = QUIESCENT
            break
        if top[0] > horizon:
            m.trace.terminated = HORIZON_REACHED
            break
        if len(m.trace.events) >= budget:
            m.trace.terminated = BUDGET_EXHAUSTED
            break
        m.step()
    return m.trace
