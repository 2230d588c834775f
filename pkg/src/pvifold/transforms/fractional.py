"""The 24 fractional-linear transformations permuting the points 0, 1, t, infinity.

Each row acts on ``(theta0, theta1, thetaT, 1 - thetaInf)`` by permuting
entries: the row string lists, for each output slot, which input letter
(a, b, c, d) lands there.  ``y`` and ``t`` transform by the given rational
expressions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.textform import parse_expr
from ..pvi import ParamSolution, ThetaTuple
from .errors import DegenerateFormula, TransformError

# name, permutation, y, t, lambda substitution (documentation only)
_ROWS = [
    ("id", "abcd", "y", "t", "lambda"),
    ("s1p2", "abdc", "(1-t)*y/(y-t)", "1-t", "t*lambda/(lambda+t-1)"),
    ("s2p1", "acbd", "y/t", "1/t", "t*lambda"),
    ("s1s2p2", "acdb", "(t-1)*y/(t*(y-1))", "(t-1)/t", "t*lambda/(t*lambda+1-t)"),
    ("s2s1p1", "adbc", "y/(y-t)", "1/(1-t)", "t*lambda/(lambda-1)"),
    ("s1s2s1", "adcb", "y/(y-1)", "t/(t-1)", "lambda/(lambda-1)"),
    ("s1", "bacd", "1-y", "1-t", "1-lambda"),
    ("p2", "badc", "t*(y-1)/(y-t)", "t", "t*(lambda-1)/(lambda-t)"),
    ("s1s3", "bcad", "(y-1)/(t-1)", "1/(1-t)", "t*lambda-lambda+1"),
    ("s3p1", "bcda", "t*(y-1)/((t-1)*y)", "t/(t-1)", "t/(lambda-t*lambda+t)"),
    ("p2s2", "bdac", "(y-1)/(y-t)", "1/t", "(t*lambda-1)/(lambda-1)"),
    ("s1s2", "bdca", "(y-1)/y", "(t-1)/t", "1/(1-lambda)"),
    ("s3s1", "cabd", "(t-y)/t", "(t-1)/t", "t*(1-lambda)"),
    ("s2p2", "cadb", "(y-t)/(t*(y-1))", "1/t", "t*(lambda-1)/(t*lambda-1)"),
    ("s3", "cbad", "(y-t)/(1-t)", "t/(t-1)", "lambda-t*lambda+t"),
    ("s3s2", "cbda", "(y-t)/((1-t)*y)", "1/(1-t)", "t/(t*lambda-lambda+1)"),
    ("p1p2", "cdab", "(y-t)/(y-1)", "t", "(lambda-t)/(lambda-1)"),
    ("s1p1", "cdba", "(y-t)/y", "1-t", "t/(1-lambda)"),
    ("s3p2", "dabc", "t/(t-y)", "t/(t-1)", "t*(lambda-1)/lambda"),
    ("s2s1", "dacb", "1/(1-y)", "1/(1-t)", "(lambda-1)/lambda"),
    ("s2s3", "dbac", "(1-t)/(y-t)", "(t-1)/t", "(t*lambda-t+1)/lambda"),
    ("s2", "dbca", "1/y", "1/t", "1/lambda"),
    ("p1s1", "dcab", "(t-1)/(y-1)", "1-t", "(lambda+t-1)/lambda"),
    ("p1", "dcba", "t/y", "t", "t/lambda"),
]


@dataclass(frozen=True)
class FLRow:
    name: str
    perm: tuple[int, int, int, int]
    y_formula: str
    t_formula: str
    lam: str

    def relabel(self, theta: ThetaTuple) -> ThetaTuple:
        q = (theta.theta0, theta.theta1, theta.thetaT, 1 - theta.thetaInf)
        out = [q[i] for i in self.perm]
        return ThetaTuple(out[0], out[1], out[2], 1 - out[3])

    def permute(self, vec):
        return tuple(vec[i] for i in self.perm)

    def __str__(self):
        return f"fl[{self.name}]"


FL_ROWS: dict[str, FLRow] = {
    name: FLRow(name, tuple("abcd".index(ch) for ch in perm), yf, tf, lam)
    for name, perm, yf, tf, lam in _ROWS
}
_BY_PERM = {row.perm: row for row in FL_ROWS.values()}
GENERATING_ROWS = ("s1", "s2", "p1")


def fl_row(name_or_row) -> FLRow:
    if isinstance(name_or_row, FLRow):
        return name_or_row
    try:
        return FL_ROWS[name_or_row]
    except KeyError:
        raise TransformError(f"unknown fractional-linear row {name_or_row!r}", "fl") from None


def row_by_perm(perm) -> FLRow:
    return _BY_PERM[tuple(perm)]


def compose_rows(first, second) -> FLRow:
    """The row equal to applying ``first`` and then ``second``."""
    p1, p2 = fl_row(first).perm, fl_row(second).perm
    return row_by_perm(tuple(p1[p2[i]] for i in range(4)))


def fl_map(y, t, row):
    """(Y, T) for the row's substitution, as tower elements."""
    row = fl_row(row)
    env = {"y": y, "t": t}
    try:
        return parse_expr(row.y_formula, y.tower, env), parse_expr(row.t_formula, y.tower, env)
    except ZeroDivisionError as exc:
        raise DegenerateFormula(f"substitution degenerates on this solution", str(row)) from exc
    except ValueError as exc:
        raise DegenerateFormula(str(exc), str(row)) from exc


def fl_apply(sol: ParamSolution, row) -> ParamSolution:
    row = fl_row(row)
    y, t = fl_map(sol.y, sol.t, row)
    label = f"{row}({sol.label})" if sol.label else ""
    return ParamSolution(t, y, row.relabel(sol.theta), label)
