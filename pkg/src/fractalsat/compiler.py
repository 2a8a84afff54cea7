"""Compile a formula and problem mode into an initial configuration."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .formula import EXISTS, And, Expr, Formula, Not, Or, Var, ncon
from .kinematics import LO, RIGHT, Configuration, MetaSignal, R, RR, ST

ONESOL = "onesol"
_QUANT = {EXISTS: "E", "A": "A"}


@dataclass
class Block:
    """Right-moving slow-tier signals, listed left to right in space."""

    metas: list[MetaSignal] = field(default_factory=list)

    def __post_init__(self):
        for m in self.metas:
            if m.direction != RIGHT or m.tier != LO:
                raise ValueError(f"beam signal {m} is not a right-moving slow-tier signal")

    @classmethod
    def of(cls, names: Iterable[str]) -> "Block":
        return cls([R(n) for n in names])

    @property
    def names(self) -> list[str]:
        return [m.base for m in self.metas]

    def __add__(self, other: "Block") -> "Block":
        return Block(self.metas + other.metas)

    def __len__(self) -> int:
        return len(self.metas)

    def __str__(self) -> str:
        return " ".join(m.name for m in self.metas)


def compile_cc(e: Expr, k: int = 0) -> Block:
    """Inverse-polish encoding with ``k`` trailing inhibitors."""
    def go(e: Expr, k: int) -> list[str]:
        if isinstance(e, Var):
            return ["x"] + ["b"] * (e.index - 1) + ["g"] * k
        if isinstance(e, Not):
            return ["not"] + ["g"] * k + go(e.arg, 0)
        op = "and" if isinstance(e, And) else "or"
        return [op] + ["g"] * k + go(e.left, 0) + go(e.right, ncon(e.left))
    return Block.of(go(e, k))


def cc_length(e: Expr, k: int = 0) -> int:
    """Closed-form size of :func:`compile_cc` computed on the tree."""
    if isinstance(e, Var):
        return e.index + k
    if isinstance(e, Not):
        return 1 + k + cc_length(e.arg, 0)
    return 1 + k + cc_length(e.left, 0) + cc_length(e.right, ncon(e.left))


def block_until(m: int) -> Block:
    if m < 1:
        raise ValueError("until needs at least one level")
    return Block.of(["stop"] + ["w"] * (m - 1))


def block_decide(n: int) -> Block:
    return Block.of(["a"] * n)


def block_var(i: int) -> Block:
    return Block.of(["x"] + ["b"] * (i - 1))


def block_store() -> Block:
    return Block.of(["s"])


def block_map_sat(e: Expr) -> Block:
    return block_store() + compile_cc(e)


def block_reduce_qsat(prefix: Sequence[str]) -> Block:
    """``prefix`` lists quantifiers Q1..Qn; the beam carries them reversed after ``c``."""
    return Block.of(["c"] + [_QUANT[q] for q in reversed(list(prefix))])


def block_reduce_sharpsat(n: int) -> Block:
    return Block.of(["hi0", "lo0", "z0"] + ["add"] * n)


def block_reduce_enumsat(n: int) -> Block:
    out = Block.of(["v"])
    for i in range(1, n + 1):
        out = out + block_var(i)
    return out + Block.of(["v"])


def beam(problem: str, f: Formula) -> Block:
    n = f.n
    if problem == "qsat":
        reduce = block_reduce_qsat(f.quantifiers)
    elif problem == "sharpsat":
        reduce = block_reduce_sharpsat(n)
    elif problem in ("enumsat", ONESOL):
        reduce = block_reduce_enumsat(n)
    else:
        raise ValueError(f"unknown problem {problem!r}")
    return reduce + block_map_sat(f.matrix) + block_decide(n) + block_until(n + 1)


def seed() -> list[tuple[Fraction, list[MetaSignal]]]:
    return [(Fraction(0), [ST("wall"), R("start"), RR("start")]), (Fraction(1), [ST("wall")])]


def place(block: Block) -> list[tuple[Fraction, MetaSignal]]:
    """Uniform spacing in (-1/8, 0), last-listed signal closest to 0."""
    count = len(block)
    delta = Fraction(1, 8 * (count + 1))
    placed = [(-(count - i) * delta, m) for i, m in enumerate(block.metas)]
    if placed:
        assert placed[0][0] > Fraction(-1, 8), "beam does not fit the placement window"
    return placed


def configuration(block: Block) -> Configuration:
    entries = [(p, [m]) for p, m in place(block)] + seed()
    conf = Configuration.from_pairs(entries)
    for pos, metas in conf.entries:
        if any(m.base == "stop" for m in metas):
            assert Fraction(-1, 6) < pos < 0, "stop signal outside (-1/6, 0)"
    return conf


def assemble(problem: str, f: Formula) -> Configuration:
    return configuration(beam(problem, f))


def fractal_configuration(levels: int) -> Configuration:
    return configuration(block_until(levels))
