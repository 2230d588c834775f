"""Round trip of the dihedral example through its quadratic companion.

The Manin fold of ``hitchin-hat`` is a solution with all exponent
differences one half, living on ``tau^2 = u(u+2)(2u+1)``.  Its curve maps onto
the dihedral entry's s-line through

    s = (-(u+1)^2 - u + sign * tau) / (u+1)^2,

a root of ``(u+1)^2 (s+1)^2 + 2us = 0``.  Under that map the output equals a
fractional-linear image of the dihedral solution (row ``p1`` for sign +1,
row ``s2p1`` for sign -1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from ..algebra.morphism import TowerMap
from ..algebra.numeric import eval_numeric
from ..pvi import ThetaTuple, theta_equivalent
from ..transforms.fractional import fl_apply
from ..transforms.pipeline import apply_pipeline
from .entries import load_entry

ROWS = {1: "p1", -1: "s2p1"}
HALVES = ThetaTuple.of("1/2", "1/2", "1/2", "1/2")


@dataclass
class RoundTripResult:
    theta: ThetaTuple
    theta_ok: bool
    relation_exact: bool
    exact: dict = field(default_factory=dict)
    max_gap: float = 0.0
    samples: int = 0
    tolerance: float = 1e-30

    @property
    def passed(self) -> bool:
        return (self.theta_ok and self.relation_exact and all(self.exact.values())
                and self.max_gap < self.tolerance)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        rows = ", ".join(f"sign {k:+d} -> {ROWS[k]}: {'exact' if v else 'no'}" for k, v in self.exact.items())
        return (f"{status} hitchin round trip theta={self.theta} relation={self.relation_exact} {rows} "
                f"max gap={self.max_gap:.2e} over {self.samples} points")


def _base_images(out):
    T = out.tower
    u, tau = T.s, T.gen(T.level - 1)
    return {sg: (-(u + 1) ** 2 - u + sg * tau) / (u + 1) ** 2 for sg in ROWS}


def _sample_u(samples: int):
    # positive points keep tau real; avoid u = 0 and the poles of the output
    return [Fraction(3 * k + 2, 7) for k in range(samples)]


def hitchin_round_trip(samples: int = 10, dps: int = 60, tol_exp: int = 30) -> RoundTripResult:
    hat = load_entry("hitchin-hat").solution
    dihedral = load_entry("hitchin-dihedral").solution
    out = apply_pipeline(hat, "manin")
    theta_ok = theta_equivalent(out.theta, HALVES)
    T = out.tower
    u = T.s
    images = _base_images(out)
    relation = all(((u + 1) ** 2 * (s + 1) ** 2 + 2 * u * s).is_zero() for s in images.values())
    result = RoundTripResult(out.theta, theta_ok, relation, samples=samples, tolerance=10.0 ** -tol_exp)
    refs = {sg: fl_apply(dihedral, row) for sg, row in ROWS.items()}
    for sg, s_img in images.items():
        tmap = TowerMap(dihedral.tower, T, s_img, [])
        result.exact[sg] = tmap(refs[sg].t) == out.t and tmap(refs[sg].y) == out.y
    gap = mp.mpf(0)
    with mp.workdps(dps):
        for point in _sample_u(samples):
            uv = mp.mpf(point.numerator) / point.denominator
            t_out = eval_numeric(out.t, uv, dps=dps)
            y_out = eval_numeric(out.y, uv, dps=dps)
            for sg, s_img in images.items():
                sv = eval_numeric(s_img, uv, dps=dps)
                rel = (uv + 1) ** 2 * (sv + 1) ** 2 + 2 * uv * sv
                dt = t_out - eval_numeric(refs[sg].t, sv, dps=dps)
                dy = y_out - eval_numeric(refs[sg].y, sv, dps=dps)
                gap = max(gap, abs(rel), abs(dt) / max(1, abs(t_out)), abs(dy) / max(1, abs(y_out)))
    result.max_gap = float(gap)
    return result


__all__ = ["hitchin_round_trip", "RoundTripResult", "ROWS"]
