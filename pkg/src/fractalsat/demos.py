"""Built-in machines: the middle construction, the bare fractal, the 3 + 1 adder."""
from __future__ import annotations

from fractions import Fraction

from .compiler import fractal_configuration, seed
from .engine import Trace, run
from .kinematics import Configuration, L, R, ST
from .rulebook import SHARPSAT, assemble_ruleset, middle_ruleset

DEMOS = ("middle", "fractal", "adder")


def middle_configuration() -> Configuration:
    return Configuration.from_pairs(seed())


def run_middle(**kw) -> Trace:
    return run(middle_ruleset(), middle_configuration(), **kw)


def run_fractal(levels: int, **kw) -> Trace:
    return run(assemble_ruleset("qsat"), fractal_configuration(levels), **kw)


def level_stationaries(tr: Trace) -> list[tuple[int, Fraction, Fraction]]:
    """(level, position, creation time) of every stationary start made by a split."""
    out = []
    for ev in tr.events:
        if not ev.rule.startswith("fractal."):
            continue
        for sid in ev.outgoing:
            if tr.signals[sid].meta == ST("start"):
                level = (1 / (1 - ev.time)).numerator.bit_length() - 1
                out.append((level, ev.pos, ev.time))
    return sorted(out)


def adder_configuration() -> Configuration:
    """Inputs 3 (left) and 1 (right) meeting at an adder stationary at 1/2.

    Digits travel least significant first, then the ``lo`` and ``hi``
    markers; slot timing follows the canonical stream layout."""
    h = Fraction(1, 2)
    pairs = [(h, [ST("addR0")])]
    pairs += [(h - Fraction(k, 32), [R(b)]) for k, b in ((4, "1"), (8, "1"), (10, "lo"), (12, "hi"))]
    pairs += [(h + Fraction(k, 32), [L(b)]) for k, b in ((4, "1"), (8, "lo"), (12, "hi"))]
    return Configuration.from_pairs(pairs)


def run_adder(**kw) -> Trace:
    return run(assemble_ruleset(SHARPSAT), adder_configuration(), **kw)
