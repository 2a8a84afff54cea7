"""Generic SAT / Q-SAT solving on a simulated signal machine over the fractal cloud."""
from .analysis import build_dag, collision_depth, concurrency_width, stats_report
from .compiler import assemble, compile_cc
from .decoder import decode_assignments, decode_count, decode_verdict, first_solution
from .engine import Trace, run, validate
from .formula import parse
from .render import render_svg
from .rulebook import assemble_ruleset

__all__ = [
    "assemble", "assemble_ruleset", "build_dag", "collision_depth", "compile_cc", "concurrency_width",
    "decode_assignments", "decode_count", "decode_verdict", "first_solution", "parse", "render_svg",
    "run", "stats_report", "Trace", "validate",
]
