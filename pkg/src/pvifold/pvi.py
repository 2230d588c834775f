"""The sixth Painleve equation on parametrized curves.

A solution is a pair ``(t(s), y(s))`` of tower elements together with the
local monodromy differences ``theta``.  Derivatives in ``t`` are taken along
the curve: ``dy/dt = (dy/ds)/(dt/ds)``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from mpmath import mp

from .algebra.numeric import (DEFAULT_DPS, SamplePolicy, eval_jet, generator_values,
                              sample_points, to_mp, Jet)
from .algebra.textform import parse_rational, rational_to_text
from .algebra.tower import Tower, TowerElement

TERM_BUDGET = 200_000
NUMERIC_TOL_EXP = 30


class DegenerateSolution(ValueError):
    """y or t lies identically on a singular locus of the equation."""


class BudgetExceeded(RuntimeError):
    pass


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {x!r}")


@dataclass(frozen=True)
class ThetaTuple:
    theta0: Fraction
    theta1: Fraction
    thetaT: Fraction
    thetaInf: Fraction

    def __post_init__(self):
        for name in ("theta0", "theta1", "thetaT", "thetaInf"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def of(cls, *vals) -> ThetaTuple:
        if len(vals) == 1:
            vals = tuple(vals[0])
        return cls(*vals)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.theta0, self.theta1, self.thetaT, self.thetaInf)

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self):
        return "(" + ",".join(rational_to_text(v) for v in self) + ")"

    def canonical(self) -> ThetaTuple:
        """Representative with nonnegative theta0, theta1, thetaT and thetaInf >= 1."""
        a, b, c, d = self
        return ThetaTuple(abs(a), abs(b), abs(c), d if d >= 1 else 2 - d)


@dataclass(frozen=True)
class PviParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)


def theta_to_params(theta: ThetaTuple) -> PviParams:
    a, b, c, d = theta
    return PviParams((d - 1) ** 2 / 2, -a * a / 2, b * b / 2, (1 - c * c) / 2)


def theta_equivalent(x: ThetaTuple, y: ThetaTuple) -> bool:
    """Equal up to sign flips of theta0, theta1, thetaT and thetaInf -> 2 - thetaInf."""
    return x.canonical() == y.canonical()


@dataclass
class ParamSolution:
    t: TowerElement
    y: TowerElement
    theta: ThetaTuple
    label: str = ""

    def __post_init__(self):
        tower = self.t.tower.common(self.y.tower)
        self.t = self.t.lift(tower)
        self.y = self.y.lift(tower)

    @property
    def tower(self) -> Tower:
        return self.t.tower

    def lift(self, tower: Tower) -> ParamSolution:
        return replace(self, t=self.t.lift(tower), y=self.y.lift(tower))

    def with_y(self, y, theta=None, label=None) -> ParamSolution:
        return ParamSolution(self.t, y, theta or self.theta, label if label is not None else self.label)


def derivative_along(y: TowerElement, t: TowerElement) -> TowerElement:
    """(dy/ds)/(dt/ds)."""
    dt = t.diff()
    if dt.is_zero():
        raise DegenerateSolution("t is constant along the curve")
    return y.diff() / dt


def check_nondegenerate(sol: ParamSolution) -> None:
    t, y = sol.t, sol.y
    if t.diff().is_zero():
        raise DegenerateSolution("t is constant along the curve")
    if t.is_zero() or (t - 1).is_zero():
        raise DegenerateSolution("t lies on a singular point")
    for name, bad in (("0", y), ("1", y - 1), ("t", y - t)):
        if bad.is_zero():
            raise DegenerateSolution(f"y is identically {name}")


def pvi_rhs(y, yp, t, params: PviParams):
    """Right-hand side of the equation for y'' (works for exact or numeric values)."""
    al, be, ga, de = (_coef(c, y) for c in params.as_tuple())
    ym1 = y - 1
    ymt = y - t
    tm1 = t - 1
    first = (1 / y + 1 / ym1 + 1 / ymt) * yp * yp / 2
    second = (1 / t + 1 / tm1 + 1 / ymt) * yp
    pot = al + be * t / (y * y) + ga * tm1 / (ym1 * ym1) + de * t * tm1 / (ymt * ymt)
    third = y * ym1 * ymt / (t * t * tm1 * tm1) * pot
    return first - second + third


def _coef(c: Fraction, like):
    if isinstance(like, TowerElement):
        return c
    return mp.mpf(c.numerator) / c.denominator


def _guard(x: TowerElement, budget: int) -> TowerElement:
    if x.size() > budget:
        raise BudgetExceeded(f"expression size {x.size()} exceeds the term budget {budget}")
    return x


def residual(sol: ParamSolution, budget: int = TERM_BUDGET) -> TowerElement:
    """y'' - RHS as an exact tower element; zero iff ``sol`` solves the equation."""
    check_nondegenerate(sol)
    t, y = sol.t, sol.y
    dt = t.diff()
    yp = _guard(y.diff() / dt, budget)
    ypp = _guard(yp.diff() / dt, budget)
    rhs = _guard(pvi_rhs(y, yp, t, theta_to_params(sol.theta)), budget)
    return ypp - rhs


def residual_at(sol: ParamSolution, point) -> object:
    """Numeric residual at ``s = point`` using Taylor jets (current mp precision)."""
    jet_point = Jet.variable(to_mp(point), 3)
    gens = generator_values(sol.tower, jet_point)
    y = eval_jet(sol.y, point, 3, gens)
    t = eval_jet(sol.t, point, 3, gens)
    t1, t2 = t.c[1], 2 * t.c[2]
    y1, y2 = y.c[1], 2 * y.c[2]
    yp = y1 / t1
    ypp = (y2 * t1 - y1 * t2) / t1 ** 3
    rhs = pvi_rhs(y.c[0], yp, t.c[0], theta_to_params(sol.theta))
    return ypp - rhs


def residual_numeric(sol: ParamSolution, samples: int = 20, dps: int = DEFAULT_DPS,
                     policy: SamplePolicy | None = None):
    """Maximum modulus of the residual over ``samples`` admissible points."""
    check_nondegenerate(sol)
    with mp.workdps(dps):
        vals = sample_points(samples, lambda p: abs(residual_at(sol, p)), policy)
        return max(v for _, v in vals)


@dataclass
class VerificationReport:
    label: str
    theta: ThetaTuple
    path: str
    passed: bool
    max_residual: float = 0.0
    samples: int = 0
    wall_time: float = 0.0
    detail: str = ""

    def to_record(self) -> dict:
        """Machine-readable payload; wall time is left out so reruns are stable."""
        return {
            "entry": self.label,
            "theta": str(self.theta),
            "path": self.path,
            "status": "PASS" if self.passed else "FAIL",
            "max_residual": f"{self.max_residual:.3e}",
            "samples": self.samples,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" max|R|={self.max_residual:.2e} samples={self.samples}" if self.path == "numeric" else ""
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.label:<22} theta={self.theta} path={self.path}{extra} time={self.wall_time:.2f}s{tail}"


def verify(sol: ParamSolution, mode: str = "auto", samples: int = 20, dps: int = DEFAULT_DPS,
           budget: int = TERM_BUDGET, tol_exp: int = NUMERIC_TOL_EXP) -> VerificationReport:
    """Decide whether ``sol`` solves its equation.

    ``mode`` is ``exact``, ``numeric`` or ``auto`` (exact within the term
    budget, numeric otherwise).
    """
    start = time.perf_counter()
    report = VerificationReport(sol.label, sol.theta, path=mode, passed=False)
    try:
        check_nondegenerate(sol)
    except DegenerateSolution as exc:
        report.path = "rejected"
        report.detail = str(exc)
        report.wall_time = time.perf_counter() - start
        return report
    if mode in ("auto", "exact"):
        try:
            r = residual(sol, budget)
            report.path = "exact"
            report.passed = r.is_zero()
            if not report.passed:
                report.detail = "residual is a nonzero tower element"
                report.max_residual = float("inf")
            report.wall_time = time.perf_counter() - start
            return report
        except BudgetExceeded:
            if mode == "exact":
                raise
    report.path = "numeric"
    m = residual_numeric(sol, samples, dps)
    report.samples = samples
    report.max_residual = float(m)
    with mp.workdps(dps):
        report.passed = bool(m < mp.mpf(10) ** (-tol_exp))
    report.wall_time = time.perf_counter() - start
    return report
