"""Per-formula statistics rows, CSV output and the matplotlib scaling figure."""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

from .analysis import stats_report
from .compiler import assemble, beam
from .engine import DEFAULT_BUDGET, DEFAULT_HORIZON, run
from .formula import EXISTS, Formula, Or, Var, size
from .rulebook import assemble_ruleset

FIELDS = ["n", "s", "beam", "events", "depth", "width_lb", "max_denominator_bits", "terminated"]


def problem_of(mode: str) -> str:
    return {"qsat": "qsat", "count": "sharpsat", "enum": "enumsat", "onesol": "enumsat",
            "sharpsat": "sharpsat", "enumsat": "enumsat"}[mode]


def extend(f: Formula, n: int) -> Formula:
    """Template family member: OR in fresh existential variables up to x_n."""
    if n < f.n:
        raise ValueError(f"family starts below the template's {f.n} variables")
    matrix = f.matrix
    prefix = list(f.prefix)
    for i in range(f.n + 1, n + 1):
        matrix = Or(matrix, Var(i))
        prefix.append((EXISTS, i))
    return Formula(tuple(prefix), matrix)


def stats_row(f: Formula, mode: str, budget: int = DEFAULT_BUDGET,
              horizon: Fraction = DEFAULT_HORIZON) -> dict:
    problem = problem_of(mode)
    tr = run(assemble_ruleset(problem), assemble(problem, f), budget=budget, horizon=horizon)
    row = {"n": f.n, "s": size(f.matrix), "beam": len(beam(problem, f))}
    row.update(stats_report(tr))
    return row


def _row_job(args):
    return stats_row(*args)


def family_rows(template: Formula, mode: str, ns: Iterable[int], jobs: int = 1, **kw) -> list[dict]:
    args = [(extend(template, n), mode, kw.get("budget", DEFAULT_BUDGET), kw.get("horizon", DEFAULT_HORIZON))
            for n in ns]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row_job, args))
    else:
        rows = [_row_job(a) for a in args]
    return sorted(rows, key=lambda r: r["n"])


def write_csv(rows: Sequence[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: r[k] for k in FIELDS})


def plot_family(rows: Sequence[dict], path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["n"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(ns, [r["depth"] for r in rows], "o-", label="collision depth")
    ax1.plot(ns, [r["n"] * r["s"] ** 2 for r in rows], "s--", color="grey", label="n·s² (shape only)")
    ax1.set_xlabel("variables n")
    ax1.set_yscale("log")
    ax1.legend(frameon=False)
    ax2.plot(ns, [r["width_lb"] for r in rows], "o-", label="width (lower bound)")
    ax2.plot(ns, [r["s"] * 2 ** r["n"] for r in rows], "s--", color="grey", label="s·2ⁿ (shape only)")
    ax2.set_xlabel("variables n")
    ax2.set_yscale("log")
    ax2.legend(frameon=False)
    for ax in (ax1, ax2):
        ax.set_xticks(ns)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
