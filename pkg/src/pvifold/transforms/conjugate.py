"""Search for a fractional-linear row and an equivalent theta with a required shape.

Quadratic formulas need theta in an exact shape.  Rather than
normalizing silently, :func:`find_conjugation` reports the row and the
relabelled tuple, and :func:`conjugate_to_shape` applies them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..pvi import ParamSolution, ThetaTuple, theta_equivalent
from .errors import ShapeError
from .fractional import FL_ROWS, FLRow, fl_apply


def _is_kitaevA(th: ThetaTuple) -> bool:
    a, b1, b, a1 = th
    return b1 == b - 1 and a1 == a + 1 and a != 0


def _is_kitaevB(th: ThetaTuple) -> bool:
    a, a2, b, b2 = th
    return a == a2 and b == b2


def _is_manin(th: ThetaTuple) -> bool:
    return th.theta0 == 0 and th.thetaInf == 1


SHAPES = {"kitaevA": _is_kitaevA, "kitaevB": _is_kitaevB, "manin": _is_manin}


def sign_variants(theta: ThetaTuple):
    """The 16 tuples equivalent to ``theta`` under sign flips and thetaInf -> 2 - thetaInf."""
    a, b, c, d = theta
    seen = []
    for s0, s1, st, flip in product((1, -1), repeat=4):
        th = ThetaTuple(s0 * a, s1 * b, st * c, d if flip == 1 else 2 - d)
        if th not in seen:
            seen.append(th)
    return seen


@dataclass(frozen=True)
class Conjugation:
    row: FLRow
    theta: ThetaTuple

    def __str__(self):
        return f"fl[{self.row.name}],relabel[{','.join(str(v) for v in self.theta)}]"


def find_conjugation(theta: ThetaTuple, shape: str) -> list[Conjugation]:
    """All (row, equivalent theta) pairs reaching ``shape``; identity row first."""
    test = SHAPES[shape]
    out = []
    for row in FL_ROWS.values():
        for th in sign_variants(row.relabel(theta)):
            if test(th):
                out.append(Conjugation(row, th))
    return out


def relabel(sol: ParamSolution, theta: ThetaTuple) -> ParamSolution:
    """Same functions, theta replaced by an equivalent tuple (same equation)."""
    theta = theta if isinstance(theta, ThetaTuple) else ThetaTuple.of(theta)
    if not theta_equivalent(sol.theta, theta):
        raise ShapeError(f"theta={theta} is not equivalent to {sol.theta}", "relabel")
    return ParamSolution(sol.t, sol.y, theta, sol.label)


def conjugate_to_shape(sol: ParamSolution, shape: str, which: int = 0) -> tuple[ParamSolution, Conjugation]:
    found = find_conjugation(sol.theta, shape)
    if not found:
        raise ShapeError(f"no fractional-linear conjugate of theta={sol.theta} has the {shape} shape", shape)
    conj = found[which]
    moved = fl_apply(sol, conj.row) if conj.row.name != "id" else sol
    return relabel(moved, conj.theta), conj


__all__ = ["find_conjugation", "conjugate_to_shape", "relabel", "sign_variants", "Conjugation", "Fraction"]
