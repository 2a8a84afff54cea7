"""Collision rules and rule sets (the machine's instruction set)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .kinematics import MetaSignal, meta


def _speed_sorted(metas: Iterable[MetaSignal]) -> tuple[MetaSignal, ...]:
    return tuple(sorted(metas, key=lambda m: (m.speed, m.base)))


@dataclass(frozen=True)
class CollisionRule:
    lhs: frozenset
    rhs: frozenset
    id: str
    provenance: str = ""

    @classmethod
    def parse(cls, text: str, id: str, provenance: str = "") -> "CollisionRule":
        """``"=>start, |wall -> <=start, |wall"``; an empty right side is allowed."""
        text = text.strip()
        if text.endswith(" ->"):
            left, right = text[:-3], ""
        else:
            left, sep, right = text.partition(" -> ")
            if not sep:
                raise ValueError(f"rule needs ' -> ': {text!r}")
        lhs = frozenset(meta(t.strip()) for t in left.split(",") if t.strip())
        rhs = frozenset(meta(t.strip()) for t in right.split(",") if t.strip())
        return cls(lhs, rhs, id, provenance)

    def text(self) -> str:
        lhs = ", ".join(m.name for m in _speed_sorted(self.lhs))
        rhs = ", ".join(m.name for m in _speed_sorted(self.rhs))
        return f"{lhs} -> {rhs}".rstrip()

    def __str__(self) -> str:
        return self.text()


@dataclass
class RuleSet:
    """Rules indexed by their left-hand side. Later duplicates are kept in
    ``rules`` so that :func:`fractalsat.engine.validate` can report them."""

    rules: list[CollisionRule] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self._index: dict[frozenset, CollisionRule] = {}
        for r in self.rules:
            self._index.setdefault(r.lhs, r)

    def add(self, rule: CollisionRule) -> None:
        self.rules.append(rule)
        self._index.setdefault(rule.lhs, rule)

    def extend(self, rules: Iterable[CollisionRule]) -> None:
        for r in rules:
            self.add(r)

    def lookup(self, lhs: frozenset) -> Optional[CollisionRule]:
        return self._index.get(lhs)

    def __contains__(self, lhs) -> bool:
        return frozenset(lhs) in self._index

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def metas(self) -> set[MetaSignal]:
        out: set[MetaSignal] = set()
        for r in self.rules:
            out |= r.lhs | r.rhs
        return out

    def catalog(self) -> str:
        """One rule per line: ``lhs -> rhs  # id: provenance``."""
        lines = []
        for r in self.rules:
            lines.append(f"{r.text()}  # {r.id}: {r.provenance}".rstrip())
        return "\n".join(lines) + ("\n" if lines else "")
