"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""
import io
import os
import random
import re
import subprocess
import sys
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from fractions import Fraction as F
from pathlib import Path

from fractalsat.analysis import collision_depth, build_dag, concurrency_width
from fractalsat.cli import main
from fractalsat.compiler import beam
from fractalsat.decoder import decode_assignments, decode_count, decode_verdict
from fractalsat.demos import level_stationaries, run_adder, run_fractal
from fractalsat.engine import QUIESCENT, validate
from fractalsat.formula import oracle_count, oracle_enum, oracle_qsat, parse, size
from fractalsat.report import extend
from fractalsat.rulebook import PROBLEMS, assemble_ruleset

from conftest import RUNNING, random_formula, random_matrix, record_criterion, solve_trace

GOLDEN = Path(__file__).parent / "golden"


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        record_criterion(f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({elapsed:.2f}s, limit {limit}s)")
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}")
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s"


def cli(*argv):
    out = io.StringIO()
    return main(list(map(str, argv)), out=out), out.getvalue()


def test_1_middle():
    with criterion(1, "middle algorithm", 1):
        code, out = cli("demo", "middle")
        assert code == 0
        assert out.splitlines() == ["STATIONARY start x=1/2 t=1/2", "EVENTS 2"]


def test_2_fractal_geometry():
    with criterion(2, "fractal geometry k=1..6", 5):
        for k in range(1, 7):
            tr = run_fractal(k)
            assert tr.terminated == QUIESCENT
            found = level_stationaries(tr)
            expected = [(j, F(2 * i + 1, 2 ** j), 1 - F(1, 2 ** j))
                        for j in range(1, k + 1) for i in range(2 ** (j - 1))]
            assert sorted(found) == sorted(expected)
            assert all(ev.time < 1 for ev in tr.events)


def test_3_qsat_oracle():
    with criterion(3, "Q-SAT oracle equivalence (200 random + running example)", 120):
        f = parse(RUNNING)
        assert decode_verdict(solve_trace("qsat", f)) is False is oracle_qsat(f)
        rng = random.Random(20240301)
        for _ in range(200):
            f = random_formula(rng, 4, 6)
            assert decode_verdict(solve_trace("qsat", f)) == oracle_qsat(f), f


def test_4_sharpsat_enumsat_oracle():
    with criterion(4, "#SAT and ENUM-SAT oracle equivalence, adder 3+1", 120):
        f = parse(": (x1 & !x2) | x3")
        assert decode_count(solve_trace("sharpsat", f)) == 5
        assert decode_assignments(solve_trace("enumsat", f), 3) == oracle_enum(f.matrix, 3)
        assert decode_count(run_adder()) == 4
        rng = random.Random(20240302)
        for _ in range(100):
            n = rng.randint(1, 4)
            m = random_matrix(rng, n, rng.randint(0, 6))
            g = parse(": x1", n_vars=n)
            g = type(g)(g.prefix, m)
            assert decode_count(solve_trace("sharpsat", g)) == oracle_count(m, n), g
            assert decode_assignments(solve_trace("enumsat", g), n) == oracle_enum(m, n), g


def test_5_complexity_bounds():
    with criterion(5, "complexity bounds on the psi_n family, n=3..7", 300):
        template = parse(RUNNING)
        rows = []
        for n in range(3, 8):
            f = extend(template, n)
            tr = solve_trace("qsat", f)
            assert tr.terminated == QUIESCENT
            assert decode_verdict(tr) == oracle_qsat(f)
            rows.append((n, size(f.matrix), len(beam("qsat", f)), collision_depth(build_dag(tr)),
                         concurrency_width(tr)))
        n0, s0, b0, d0, _ = rows[0]
        c1, c2 = F(b0, s0 ** 2), F(d0, n0 * s0 ** 2)
        for n, s, b, d, _ in rows:
            assert b <= c1 * s ** 2, (n, b)
            assert d <= c2 * n * s ** 2, (n, d)
        for (_, _, _, _, w0), (_, _, _, _, w1) in zip(rows, rows[1:]):
            assert w1 >= F(18, 10) * w0


def test_6_determinism(tmp_path):
    with criterion(6, "byte-identical --dump-trace", 60):
        src = tmp_path / "running.qbf"
        src.write_text(RUNNING + "\n")
        dumps = []
        for seed in ("1", "2"):
            out = tmp_path / f"trace{seed}.txt"
            env = dict(os.environ, PYTHONHASHSEED=seed)
            subprocess.run([sys.executable, "-m", "fractalsat", "solve", "--input", str(src),
                            "--dump-trace", str(out)], check=True, env=env, capture_output=True)
            dumps.append(out.read_bytes())
        assert dumps[0] == dumps[1] and dumps[0]


PROVENANCE = re.compile(r"^(App\. [AB](\.\d)?, .+|lens meta-rule \(.+\)|mirror of \S+|.+ \(generated\))$")


def test_7_ruleset_integrity():
    with criterion(7, "ruleset integrity and provenance", 1):
        for problem in PROBLEMS:
            rs = assemble_ruleset(problem)
            assert validate(rs) == []
            for r in rs.rules:
                assert PROVENANCE.match(r.provenance), (r.id, r.provenance)


def test_8_rendering(tmp_path):
    with criterion(8, "middle diagram slopes and golden SVG", 1):
        out = tmp_path / "middle.svg"
        code, _ = cli("demo", "middle", "--diagram", out)
        assert code == 0
        svg = out.read_bytes()
        assert svg == (GOLDEN / "middle.svg").read_bytes()
        root = ET.fromstring(svg)
        style_span = F(13, 10)
        desc = root.find("{http://www.w3.org/2000/svg}desc").text
        t_max = F(re.search(r"time \[0, (\S+)\]", desc).group(1))
        slopes = set()
        for ln in root.iter("{http://www.w3.org/2000/svg}line"):
            dx = float(ln.get("x2")) - float(ln.get("x1"))
            dy = float(ln.get("y1")) - float(ln.get("y2"))
            speed = (dx / 800 * float(style_span)) / (dy / 800 * float(t_max))
            nearest = min((-3, -1, 0, 1, 3), key=lambda v: abs(v - speed))
            assert abs(nearest - speed) < 1e-9
            slopes.add(nearest)
        assert slopes <= {0, 1, -1, 3, -3}
        assert slopes == {0, 1, 3, -3}
