import re
import xml.etree.ElementTree as ET
from fractions import Fraction as F

from fractalsat.demos import run_middle
from fractalsat.engine import run
from fractalsat.kinematics import Configuration
from fractalsat.machine import RuleSet
from fractalsat.render import Style, render_svg

NS = "{http://www.w3.org/2000/svg}"


def segments(svg):
    return ET.fromstring(svg).iter(NS + "line")


def test_middle_geometry():
    svg = render_svg(run_middle())
    lines = list(segments(svg))
    assert len(lines) == 7
    vertical_x = {ln.get("x1") for ln in lines if ln.get("x1") == ln.get("x2")}
    assert len(vertical_x) == 3
    speeds = {F(ln.get("data-speed")) for ln in lines}
    assert speeds == {0, 1, 3, -3}
    start = [ln for ln in lines if ln.get("data-meta") == "|start"][0]
    style = Style()
    apex_px = float((F(1, 2) - style.x_min) / (style.x_max - style.x_min) * style.width)
    assert abs(float(start.get("x1")) - apex_px) < 1e-9


def test_every_signal_once(running_trace):
    ids = [ln.get("id") for ln in segments(render_svg(running_trace))]
    assert len(ids) == len(set(ids)) == len(running_trace.signals)


def test_clipping_preserves_slope(running_trace):
    style = Style(t_max=F(1, 4))
    w, h = style.width, style.height
    for ln in segments(render_svg(running_trace, style)):
        dx = float(ln.get("x2")) - float(ln.get("x1"))
        dy = float(ln.get("y1")) - float(ln.get("y2"))
        if dy:
            speed = (dx / w * float(style.x_max - style.x_min)) / (dy / h * 0.25)
            assert abs(speed - float(F(ln.get("data-speed")))) < 1e-6
        assert float(ln.get("y2")) >= -1e-9


def test_empty_trace_renders():
    svg = render_svg(run(RuleSet([]), Configuration([])))
    root = ET.fromstring(svg)
    assert root.tag == NS + "svg" and list(segments(svg)) == []


def test_deterministic(running_trace):
    assert render_svg(running_trace) == render_svg(running_trace)


def test_size_flags():
    svg = render_svg(run_middle(), Style(width=300, height=200))
    assert re.search(r'width="300" height="200"', svg)
