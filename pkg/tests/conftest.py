import random
from functools import lru_cache

import pytest

from fractalsat.compiler import assemble
from fractalsat.engine import run
from fractalsat.formula import EXISTS, FORALL, And, Formula, Not, Or, Var, parse
from fractalsat.rulebook import assemble_ruleset

RUNNING = "E x1 A x2 A x3 : (x1 & !x2) | x3"

_ACCEPTANCE: list[str] = []


def record_criterion(line: str) -> None:
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def ruleset(problem):
    return assemble_ruleset(problem)


def solve_trace(problem, f, **kw):
    return run(ruleset(problem), assemble(problem, f), **kw)


@pytest.fixture(scope="session")
def running():
    return parse(RUNNING)


@pytest.fixture(scope="session")
def running_trace(running):
    return solve_trace("qsat", running)


def random_matrix(rng: random.Random, n: int, connectives: int):
    """Random expression over x1..xn with exactly ``connectives`` connective nodes."""
    if connectives == 0:
        return Var(rng.randint(1, n))
    if connectives == 1 or rng.random() < 0.25:
        return Not(random_matrix(rng, n, connectives - 1))
    left = rng.randint(0, connectives - 1)
    op = rng.choice((And, Or))
    return op(random_matrix(rng, n, left), random_matrix(rng, n, connectives - 1 - left))


def random_formula(rng: random.Random, max_n: int = 4, max_con: int = 6) -> Formula:
    n = rng.randint(1, max_n)
    matrix = random_matrix(rng, n, rng.randint(0, max_con))
    prefix = tuple((rng.choice((EXISTS, FORALL)), i) for i in range(1, n + 1))
    return Formula(prefix, matrix)
