"""Causal-DAG measures of a trace: collision depth and a concurrency width bound."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .engine import Trace

SOURCE = -1


@dataclass
class CausalDag:
    """Vertices are event indices plus ``SOURCE``; one arc per signal.

    Arcs are ``(signal id, tail, head)`` with ``head`` None for signals that
    never die (open arcs)."""

    vertices: list[int] = field(default_factory=list)
    arcs: list[tuple[int, int, Optional[int]]] = field(default_factory=list)

    def closed_arcs(self) -> list[tuple[int, int]]:
        return [(t, h) for _, t, h in self.arcs if h is not None]

    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for t, h in self.closed_arcs():
            out[t].append(h)
        return out

    def topological_order(self) -> list[int]:
        indeg = {v: 0 for v in self.vertices}
        succ = self.successors()
        for _, h in self.closed_arcs():
            indeg[h] += 1
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if len(order) != len(self.vertices):
            raise ValueError("causal graph has a cycle")
        return order


def build_dag(tr: Trace) -> CausalDag:
    dag = CausalDag(vertices=[SOURCE] + [ev.index for ev in tr.events])
    for sid in sorted(tr.signals):
        tail = tr.birth[sid]
        dag.arcs.append((sid, SOURCE if tail is None else tail, tr.death.get(sid)))
    return dag


def collision_depth(dag: CausalDag) -> int:
    """Number of events on the longest causal chain."""
    depth = {v: 0 for v in dag.vertices}
    succ = dag.successors()
    for v in dag.topological_order():
        here = depth[v] + (0 if v == SOURCE else 1)
        for w in succ[v]:
            if here > depth[w]:
                depth[w] = here
    return max((d + 1 for v, d in depth.items() if v != SOURCE), default=0)


def trace_depth(tr: Trace) -> int:
    """Same as ``collision_depth(build_dag(tr))`` using the event order directly."""
    depth: dict[int, int] = {}
    for ev in tr.events:
        depth[ev.index] = 1 + max((depth[tr.birth[i]] for i in ev.incoming if tr.birth[i] is not None),
                                  default=0)
    return max(depth.values(), default=0)


def width_witness(tr: Trace) -> list[int]:
    """Largest set of signals alive together over an inter-event interval.

    Signals overlapping in time cannot be causally ordered, so the set is an
    anti-chain and its size bounds the maximal anti-chain from below."""
    alive = {sid for sid, b in tr.birth.items() if b is None}
    best = set(alive)
    events = tr.events
    i = 0
    while i < len(events):
        t = events[i].time
        while i < len(events) and events[i].time == t:
            alive.difference_update(events[i].incoming)
            alive.update(events[i].outgoing)
            i += 1
        if len(alive) > len(best):
            best = set(alive)
    return sorted(best)


def concurrency_width(tr: Trace) -> int:
    return len(width_witness(tr))


def max_denominator_bits(tr: Trace) -> int:
    bits = [q.denominator.bit_length() for ev in tr.events for q in (ev.time, ev.pos)]
    bits += [p.denominator.bit_length() for p, _ in tr.initial.entries]
    return max(bits, default=0)


def stats_report(tr: Trace) -> dict[str, object]:
    return {
        "events": len(tr.events),
        "depth": trace_depth(tr),
        "width_lb": concurrency_width(tr),
        "max_denominator_bits": max_denominator_bits(tr),
        "terminated": tr.terminated,
    }
