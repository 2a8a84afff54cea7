"""Space-time diagrams as standalone SVG 1.1.

Geometry stays rational until the very last step; coordinates are written
with 12 significant digits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .engine import Trace
from .kinematics import fmt

FAMILY_COLOURS = {
    "fractal": "#555555",
    "variable": "#1f5fbf",
    "connective": "#e07b00",
    "truth": "#2a9d3a",
    "quantifier": "#8e3fb5",
    "adder": "#8c564b",
    "enum": "#138d90",
    "other": "#000000",
}

_FAMILY = {}
for _names, _fam in (
    (("start", "startoff", "wall", "stop", "w"), "fractal"),
    (("x", "xoff", "b", "a"), "variable"),
    (("and", "or", "not", "g", "g'", "and'", "or'", "and0", "or0", "not0"), "connective"),
    (("t", "f", "T", "F", "t'", "f'", "s"), "truth"),
    (("E", "A", "EL", "ER", "AL", "AR", "c"), "quantifier"),
    (("add", "addL0", "addL1", "addR0", "addR1", "0", "1", "lo", "hi", "z0", "lo0", "hi0"), "adder"),
    (("v", "v0", "v1"), "enum"),
):
    for _n in _names:
        _FAMILY[_n] = _fam


def family(base: str) -> str:
    return _FAMILY.get(base, "other")


def decorated(base: str) -> bool:
    return base.endswith(("off", "'")) or base in ("and0", "or0", "not0", "v0", "v1")


@dataclass
class Style:
    width: int = 800
    height: int = 800
    x_min: Fraction = Fraction(-1, 4)
    x_max: Fraction = Fraction(21, 20)
    t_max: Optional[Fraction] = None
    stroke_width: str = "1"
    colours: dict = field(default_factory=lambda: dict(FAMILY_COLOURS))


def _num(q: Fraction) -> str:
    return format(float(q), ".12g")


def default_t_max(tr: Trace) -> Fraction:
    last = max((ev.time for ev in tr.events), default=Fraction(0))
    return last * Fraction(5, 4) if last > 0 else Fraction(1)


def segments(tr: Trace, t_max: Fraction) -> list[tuple[int, Fraction, Fraction, Fraction, Fraction]]:
    """(signal id, x0, t0, x1, t1) in data coordinates, cut at ``t_max``."""
    out = []
    for sid in sorted(tr.signals):
        s = tr.signals[sid]
        if s.birth_time > t_max:
            continue
        end = tr.death_time(sid)
        t1 = t_max if end is None or end > t_max else end
        x1 = s.birth_pos + s.speed * (t1 - s.birth_time)
        out.append((sid, s.birth_pos, s.birth_time, x1, t1))
    return out


def render_svg(tr: Trace, style: Optional[Style] = None) -> str:
    style = style or Style()
    t_max = Fraction(style.t_max) if style.t_max is not None else default_t_max(tr)
    w, h = Fraction(style.width), Fraction(style.height)
    span = style.x_max - style.x_min

    def px(x: Fraction) -> str:
        return _num((x - style.x_min) / span * w)

    def py(t: Fraction) -> str:
        return _num(h - t / t_max * h)

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{style.width}" height="{style.height}" viewBox="0 0 {style.width} {style.height}">',
        f'<desc>space [{fmt(style.x_min)}, {fmt(style.x_max)}] time [0, {fmt(t_max)}]</desc>',
        f'<rect x="0" y="0" width="{style.width}" height="{style.height}" fill="#ffffff"/>',
        f'<g stroke-width="{style.stroke_width}" fill="none">',
    ]
    for sid, x0, t0, x1, t1 in segments(tr, t_max):
        m = tr.signals[sid].meta
        colour = style.colours.get(family(m.base), style.colours["other"])
        dash = ' stroke-dasharray="4,2"' if decorated(m.base) else ""
        name = m.name.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        lines.append(
            f'<line id="s{sid}" x1="{px(x0)}" y1="{py(t0)}" x2="{px(x1)}" y2="{py(t1)}" '
            f'stroke="{colour}"{dash} data-meta="{name}" data-speed="{fmt(m.speed)}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
