"""Prenex QBF syntax, a recursive-descent parser, and brute-force oracles.

Grammar::

    formula := prefix? ':' expr
    prefix  := (('E' | 'A') var)+
    expr    := term ('|' term)*
    term    := factor ('&' factor)*
    factor  := '!' factor | '(' expr ')' | var
    var     := 'x' digits
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

EXISTS, FORALL = "E", "A"


class FormulaError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Var, Not, And, Or]


@dataclass(frozen=True)
class Formula:
    prefix: tuple[tuple[str, int], ...]
    matrix: Expr

    @property
    def n(self) -> int:
        return len(self.prefix)

    @property
    def quantifiers(self) -> list[str]:
        return [q for q, _ in self.prefix]

    def __str__(self) -> str:
        return format_formula(self)


Assignment = tuple[bool, ...]

_TOKEN = re.compile(r"\s*(?:(?P<var>x\d+)|(?P<q>[EA])(?![\w])|(?P<op>[&|!():])|(?P<bad>\S))")


def _tokens(text: str) -> Iterator[tuple[str, str, int, int]]:
    for lineno, line in enumerate(text.splitlines() or [""], 1):
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None or m.end() == pos:
                break
            kind = m.lastgroup
            value = m.group(kind)
            col = m.start(kind) + 1
            if kind == "bad":
                raise FormulaError(f"unexpected character {value!r}", lineno, col)
            yield kind, value, lineno, col
            pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text))
        self.i = 0
        last = self.toks[-1] if self.toks else ("eof", "", 1, 0)
        self.eof = ("eof", "", last[2], last[3] + len(last[1]))

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else self.eof

    def take(self, value: Optional[str] = None, kind: Optional[str] = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise FormulaError(f"expected {want}, got {got}", tok[2], tok[3])
        self.i += 1
        return tok

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] == "|":
            self.take("|")
            node = Or(node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] == "&":
            self.take("&")
            node = And(node, self.factor())
        return node

    def factor(self) -> Expr:
        tok = self.peek()
        if tok[1] == "!":
            self.take("!")
            return Not(self.factor())
        if tok[1] == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        kind, value, line, col = self.take(kind="var")
        return _var(value, line, col)


def _var(token: str, line: int, col: int) -> Var:
    idx = int(token[1:])
    if idx < 1:
        raise FormulaError(f"variable index must be positive: {token}", line, col)
    return Var(idx)


def parse(text: str, n_vars: Optional[int] = None) -> Formula:
    """Parse a prenex formula.  Without a prefix, ``n_vars`` existential
    variables are assumed (pure SAT modes)."""
    p = _Parser(text)
    prefix: list[tuple[str, int]] = []
    while p.peek()[0] == "q":
        _, q, _, _ = p.take(kind="q")
        _, name, line, col = p.take(kind="var")
        idx = _var(name, line, col).index
        if idx in {i for _, i in prefix}:
            raise FormulaError(f"variable x{idx} bound twice", line, col)
        if idx != len(prefix) + 1:
            raise FormulaError(f"prefix must bind x1..xn in order, got x{idx} at position {len(prefix) + 1}", line, col)
        prefix.append((q, idx))
    p.take(":")
    matrix = p.expr()
    tok = p.peek()
    if tok[0] != "eof":
        raise FormulaError(f"unexpected {tok[1]!r} after expression", tok[2], tok[3])
    if not prefix:
        if n_vars is None:
            n_vars = max(variables(matrix), default=0)
        prefix = [(EXISTS, i) for i in range(1, n_vars + 1)]
    bound = {i for _, i in prefix}
    for v in sorted(variables(matrix)):
        if v not in bound:
            line, col = _locate(text, f"x{v}")
            raise FormulaError(f"unbound variable x{v}", line, col)
    if not prefix:
        raise FormulaError("formula has no variables")
    return Formula(tuple(prefix), matrix)


def _locate(text: str, word: str) -> tuple[int, int]:
    for lineno, line in enumerate(text.splitlines(), 1):
        m = re.search(rf"\b{word}\b", line.split(":", 1)[-1] if ":" in line else line)
        if m:
            offset = line.index(":") + 1 if ":" in line else 0
            return lineno, offset + m.start() + 1
    return 1, 1


def variables(e: Expr) -> set[int]:
    if isinstance(e, Var):
        return {e.index}
    if isinstance(e, Not):
        return variables(e.arg)
    return variables(e.left) | variables(e.right)


def ncon(e: Expr) -> int:
    """Number of connective occurrences."""
    if isinstance(e, Var):
        return 0
    if isinstance(e, Not):
        return 1 + ncon(e.arg)
    return 1 + ncon(e.left) + ncon(e.right)


def size(e: Expr) -> int:
    """Number of nodes (connectives plus variable occurrences)."""
    if isinstance(e, Var):
        return 1
    if isinstance(e, Not):
        return 1 + size(e.arg)
    return 1 + size(e.left) + size(e.right)


def format_expr(e: Expr) -> str:
    def go(e: Expr, ctx: int) -> str:
        # ctx: 0 top/or, 1 and-operand, 2 not-operand
        if isinstance(e, Var):
            return f"x{e.index}"
        if isinstance(e, Not):
            return "!" + go(e.arg, 2)
        if isinstance(e, And):
            s = f"{go(e.left, 1)} & {go(e.right, 2)}"
            return f"({s})" if ctx >= 2 else s
        s = f"{go(e.left, 0)} | {go(e.right, 1)}"
        return f"({s})" if ctx >= 1 else s
    return go(e, 0)


def format_formula(f: Formula) -> str:
    head = " ".join(f"{q} x{i}" for q, i in f.prefix)
    return f"{head} : {format_expr(f.matrix)}"


def evaluate(e: Expr, bits: Assignment) -> bool:
    if isinstance(e, Var):
        return bits[e.index - 1]
    if isinstance(e, Not):
        return not evaluate(e.arg, bits)
    if isinstance(e, And):
        return evaluate(e.left, bits) and evaluate(e.right, bits)
    return evaluate(e.left, bits) or evaluate(e.right, bits)


def oracle_qsat(f: Formula) -> bool:
    def rec(i: int, bits: tuple[bool, ...]) -> bool:
        if i == f.n:
            return evaluate(f.matrix, bits)
        lo, hi = rec(i + 1, bits + (False,)), rec(i + 1, bits + (True,))
        return (lo or hi) if f.prefix[i][0] == EXISTS else (lo and hi)
    return rec(0, ())


def oracle_enum(matrix: Expr, n: int) -> set[Assignment]:
    return {bits for bits in itertools.product((False, True), repeat=n) if evaluate(matrix, bits)}


def oracle_count(matrix: Expr, n: int) -> int:
    return sum(1 for bits in itertools.product((False, True), repeat=n) if evaluate(matrix, bits))
