"""Command-line entry point: ``fractalsat solve|demo|analyze``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import decoder
from .analysis import stats_report
from .compiler import assemble
from .demos import DEMOS, level_stationaries, run_adder, run_fractal, run_middle
from .engine import DEFAULT_BUDGET, DEFAULT_HORIZON, QUIESCENT, Trace, run
from .formula import FormulaError, oracle_count, oracle_enum, oracle_qsat, parse
from .kinematics import ST, fmt, to_rational
from .render import Style, render_svg
from .report import FIELDS, family_rows, plot_family, problem_of, stats_row, write_csv
from .rulebook import assemble_ruleset

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_MALFORMED, EXIT_UNFINISHED = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e))


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("expected nmin..nmax")
    return range(int(lo), int(hi) + 1)


def _bits(bits) -> str:
    return ",".join(f"x{i}={int(b)}" for i, b in enumerate(bits, 1))


def _load(args):
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot read {args.input}: {e.strerror}", EXIT_PARSE)
    try:
        return parse(text, n_vars=args.vars)
    except FormulaError as e:
        raise CliError(f"{args.input}:{e}", EXIT_PARSE)


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _style(args) -> Style:
    return Style(width=args.width, height=args.height, t_max=args.t_max)


def _finish(tr: Trace, args) -> None:
    _write(getattr(args, "dump_trace", None), tr.dumps())
    if getattr(args, "diagram", None):
        _write(args.diagram, render_svg(tr, _style(args)))


def _require_quiescent(tr: Trace) -> None:
    if tr.terminated != QUIESCENT:
        raise CliError(f"run stopped early: {tr.terminated} after {len(tr.events)} events", EXIT_UNFINISHED)


def cmd_solve(args, out) -> int:
    f = _load(args)
    problem = problem_of(args.mode)
    rules = assemble_ruleset(problem)
    conf = assemble(problem, f)
    _write(args.dump_config, "\n".join(conf.lines()) + "\n")
    _write(args.dump_rules, rules.catalog())
    tr = run(rules, conf, budget=args.budget, horizon=args.horizon)
    _finish(tr, args)
    _require_quiescent(tr)
    try:
        if args.mode == "qsat":
            answer = decoder.decode_verdict(tr)
            print(f"VERDICT {str(answer).lower()}", file=out)
        elif args.mode == "count":
            answer = decoder.decode_count(tr)
            print(f"COUNT {answer} (binary {answer:b})", file=out)
        elif args.mode == "enum":
            answer = decoder.decode_assignments(tr, f.n)
            for bits in sorted(answer):
                print(f"SOLUTION {_bits(bits)}", file=out)
            if not answer:
                print("UNSATISFIABLE", file=out)
        else:
            answer = decoder.first_solution(tr, f.n)
            print(f"SOLUTION {_bits(answer)}" if answer is not None else "UNSATISFIABLE", file=out)
    except decoder.MalformedRun as e:
        raise CliError(f"malformed run: {e}", EXIT_MALFORMED)
    if args.stats:
        for k, v in stats_report(tr).items():
            print(f"{k}={v}", file=out)
    if args.oracle_check:
        if args.mode == "qsat":
            expected = oracle_qsat(f)
            ok = answer == expected
        elif args.mode == "count":
            expected = oracle_count(f.matrix, f.n)
            ok = answer == expected
        elif args.mode == "enum":
            expected = oracle_enum(f.matrix, f.n)
            ok = answer == expected
        else:
            expected = oracle_enum(f.matrix, f.n)
            ok = (answer is None) == (not expected) and (answer is None or answer in expected)
        print(f"ORACLE {'ok' if ok else 'mismatch'}", file=out)
        if not ok:
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_demo(args, out) -> int:
    kw = dict(budget=args.budget, horizon=args.horizon)
    if args.name == "middle":
        tr = run_middle(**kw)
        for s in tr.survivors():
            if s.meta == ST("start"):
                print(f"STATIONARY start x={fmt(s.birth_pos)} t={fmt(s.birth_time)}", file=out)
        print(f"EVENTS {len(tr.events)}", file=out)
    elif args.name == "fractal":
        tr = run_fractal(args.levels, **kw)
        for level, x, t in level_stationaries(tr):
            print(f"LEVEL {level} x={fmt(x)} t={fmt(t)}", file=out)
        last = max((ev.time for ev in tr.events), default=Fraction(0))
        print(f"EVENTS {len(tr.events)} last_t={fmt(last)}", file=out)
    else:
        tr = run_adder(**kw)
        _require_quiescent(tr)
        try:
            n = decoder.decode_count(tr)
        except decoder.MalformedRun as e:
            raise CliError(f"malformed run: {e}", EXIT_MALFORMED)
        print(f"COUNT {n} (binary {n:b})", file=out)
    _finish(tr, args)
    _require_quiescent(tr)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    f = _load(args)
    kw = dict(budget=args.budget, horizon=args.horizon)
    if args.family:
        try:
            rows = family_rows(f, args.mode, args.family, jobs=args.jobs, **kw)
        except ValueError as e:
            raise CliError(str(e), EXIT_PARSE)
    else:
        rows = [stats_row(f, args.mode, **kw)]
    for r in rows:
        print(" ".join(f"{k}={r[k]}" for k in FIELDS), file=out)
    if args.csv:
        write_csv(rows, args.csv)
    if args.plot:
        plot_family(rows, args.plot)
    if any(r["terminated"] != QUIESCENT for r in rows):
        return EXIT_UNFINISHED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fractalsat", description="Signal-machine SAT / Q-SAT solver.")
    sub = p.add_subparsers(dest="command", required=True)

    def run_flags(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of collisions")
        sp.add_argument("--horizon", type=_rational, default=DEFAULT_HORIZON, help="stop before this time (p/q)")

    def render_flags(sp):
        sp.add_argument("--diagram", metavar="OUT.svg", help="write the space-time diagram")
        sp.add_argument("--width", type=int, default=800)
        sp.add_argument("--height", type=int, default=800)
        sp.add_argument("--t-max", type=_rational, default=None, help="clip the diagram at this time")
        sp.add_argument("--dump-trace", metavar="FILE", help="write the exact trace")

    s = sub.add_parser("solve", help="compile, run and decode a formula")
    s.add_argument("--mode", choices=["qsat", "count", "enum", "onesol"], default="qsat")
    s.add_argument("--input", required=True)
    s.add_argument("--vars", type=int, default=None, help="variable count when the prefix is omitted")
    s.add_argument("--stats", action="store_true")
    s.add_argument("--oracle-check", action="store_true")
    s.add_argument("--dump-config", metavar="FILE")
    s.add_argument("--dump-rules", metavar="FILE")
    run_flags(s)
    render_flags(s)
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("demo", help="run a built-in machine")
    d.add_argument("name", choices=DEMOS)
    d.add_argument("--levels", type=int, default=4)
    run_flags(d)
    render_flags(d)
    d.set_defaults(func=cmd_demo)

    a = sub.add_parser("analyze", help="collision depth and width statistics")
    a.add_argument("--mode", choices=["qsat", "count", "enum", "onesol"], default="qsat")
    a.add_argument("--input", required=True)
    a.add_argument("--vars", type=int, default=None)
    a.add_argument("--family", type=_range, metavar="NMIN..NMAX")
    a.add_argument("--csv", metavar="OUT.csv")
    a.add_argument("--plot", metavar="OUT.png", help="depth/width scaling figure")
    a.add_argument("--jobs", type=int, default=1)
    run_flags(a)
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as e:
        print(f"fractalsat: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
