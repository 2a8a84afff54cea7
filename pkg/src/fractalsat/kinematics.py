"""Exact rational kinematics: meta-signals, signals and their meeting points.

Every coordinate is a :class:`fractions.Fraction`; nothing here ever touches a
float.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Fraction

LEFT, RIGHT, STATIONARY = "left", "right", "stationary"
LO, HI, SLOW, NONE = "lo", "hi", "slow", "none"

_TIER_SPEED = {LO: Fraction(1), HI: Fraction(3), SLOW: Fraction(1, 3)}

# textual arrows: direction/tier <-> prefix
_PREFIX = {
    (RIGHT, LO): "->",
    (RIGHT, HI): "=>",
    (RIGHT, SLOW): "~>",
    (LEFT, LO): "<-",
    (LEFT, HI): "<=",
    (LEFT, SLOW): "<~",
    (STATIONARY, NONE): "|",
}
_BY_PREFIX = {v: k for k, v in _PREFIX.items()}


def to_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fmt(q: Fraction) -> str:
    """Canonical ``p/q`` string; just ``p`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class MetaSignal:
    """A signal type. Identity is (base, direction, tier)."""

    base: str
    direction: str = STATIONARY
    tier: str = NONE

    def __post_init__(self):
        if (self.direction, self.tier) not in _PREFIX:
            raise ValueError(f"bad direction/tier {self.direction}/{self.tier} for {self.base}")

    @property
    def speed(self) -> Fraction:
        if self.direction == STATIONARY:
            return Fraction(0)
        v = _TIER_SPEED[self.tier]
        return v if self.direction == RIGHT else -v

    @property
    def name(self) -> str:
        return _PREFIX[(self.direction, self.tier)] + self.base

    @property
    def stationary(self) -> bool:
        return self.direction == STATIONARY

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"M({self.name})"


def meta(name: str) -> MetaSignal:
    """Build a meta-signal from its arrow notation, e.g. ``"=>start"`` or ``"|wall"``."""
    for prefix in ("->", "=>", "~>", "<-", "<=", "<~", "|"):
        if name.startswith(prefix):
            direction, tier = _BY_PREFIX[prefix]
            base = name[len(prefix):]
            if not base:
                break
            return MetaSignal(base, direction, tier)
    raise ValueError(f"unrecognised meta-signal notation: {name!r}")


def R(base: str) -> MetaSignal:
    return MetaSignal(base, RIGHT, LO)


def RR(base: str) -> MetaSignal:
    return MetaSignal(base, RIGHT, HI)


def L(base: str) -> MetaSignal:
    return MetaSignal(base, LEFT, LO)


def LL(base: str) -> MetaSignal:
    return MetaSignal(base, LEFT, HI)


def ST(base: str) -> MetaSignal:
    return MetaSignal(base)


@dataclass(frozen=True)
class Signal:
    meta: MetaSignal
    birth_pos: Fraction
    birth_time: Fraction
    id: int

    @property
    def speed(self) -> Fraction:
        return self.meta.speed


def position_at(s: Signal, t: Fraction) -> Fraction:
    if t < s.birth_time:
        raise ValueError(f"signal {s.id} ({s.meta}) not yet born at t={fmt(t)}")
    return s.birth_pos + s.speed * (t - s.birth_time)


def meet(s1: Signal, s2: Signal, after: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Earliest (time, pos) with time > ``after`` where both trajectories coincide."""
    v1, v2 = s1.speed, s2.speed
    if v1 == v2:
        return None
    # x1 + v1 (t - t1) = x2 + v2 (t - t2)
    t = (s2.birth_pos - s1.birth_pos + v1 * s1.birth_time - v2 * s2.birth_time) / (v1 - v2)
    if t <= after or t < s1.birth_time or t < s2.birth_time:
        return None
    return t, s1.birth_pos + v1 * (t - s1.birth_time)


@dataclass
class Configuration:
    """Initial placement: sorted (position, metas) entries."""

    entries: list[tuple[Fraction, frozenset[MetaSignal]]] = field(default_factory=list)

    def __post_init__(self):
        merged: dict[Fraction, set[MetaSignal]] = {}
        for pos, metas in self.entries:
            merged.setdefault(Fraction(pos), set()).update(metas)
        self.entries = [(p, frozenset(merged[p])) for p in sorted(merged)]
        for pos, metas in self.entries:
            speeds = [m.speed for m in metas]
            if len(set(speeds)) != len(speeds):
                raise ValueError(f"two meta-signals with equal speed at x={fmt(pos)}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Fraction, Iterable[MetaSignal]]]) -> "Configuration":
        return cls([(Fraction(p), frozenset(ms)) for p, ms in pairs])

    def signals(self) -> list[tuple[Fraction, MetaSignal]]:
        """Flattened (pos, meta) pairs in a stable order."""
        return [(p, m) for p, metas in self.entries for m in sorted(metas, key=lambda m: (m.speed, m.base))]

    def __len__(self) -> int:
        return sum(len(m) for _, m in self.entries)

    def lines(self) -> list[str]:
        return [
            f"INIT x={fmt(p)} metas={','.join(m.name for m in sorted(metas, key=lambda m: (m.speed, m.base)))}"
            for p, metas in self.entries
        ]
