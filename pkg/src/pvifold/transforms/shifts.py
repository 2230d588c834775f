"""Integer shifts of the fold parameters a, b acting on (eta, y0).

An expression ``E(a, b; tau, eta, y0)`` for a solution in the orbit of the
``(a,a,b,b)`` family becomes one for shifted parameters by substituting the
new ``eta`` and ``y0`` below (written in the old a, b) and the new a, b.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from ..algebra.tower import TowerElement
from .errors import DegenerateFormula, TransformError

SHIFT_KINDS = ("b+1", "b-1", "a<->b", "1-b", "a+1", "a-1")


@dataclass(frozen=True)
class ShiftState:
    a: Fraction
    b: Fraction
    tau: TowerElement
    eta: TowerElement
    y0: TowerElement


def _nz(x: TowerElement, what: str, kind: str) -> TowerElement:
    if x.is_zero():
        raise DegenerateFormula(f"{what} vanishes identically", f"shift[{kind}]")
    return x


def _b_plus_one(st: ShiftState) -> ShiftState:
    a, b, tau, eta, y0 = st.a, st.b, st.tau, st.eta, st.y0
    t2, e2 = tau * tau, eta * eta
    p = a * (y0 - t2) - b * (y0 - e2)
    q = _nz(a * e2 * (y0 - t2) - b * t2 * (y0 - e2), "a eta^2 (y0-tau^2) - b tau^2 (y0-eta^2)", "b+1")
    r = a * e2 * (y0 - t2) - b * y0 * (y0 - e2)
    w = _nz(a * y0 * (y0 - t2) - b * t2 * (y0 - e2), "a y0 (y0-tau^2) - b tau^2 (y0-eta^2)", "b+1")
    return ShiftState(a, b + 1, tau, tau * eta * p / q, t2 * p * r / (q * w))


def _b_minus_one(st: ShiftState) -> ShiftState:
    a, b, tau, eta, y0 = st.a, st.b, st.tau, st.eta, st.y0
    t2, e2 = tau * tau, eta * eta
    p = a * (y0 - 1) + (b - 1) * (y0 - e2)
    q = _nz(a * e2 * (y0 - 1) + (b - 1) * (y0 - e2), "a eta^2 (y0-1) + (b-1)(y0-eta^2)", "b-1")
    r = a * e2 * (y0 - 1) + (b - 1) * y0 * (y0 - e2)
    w = _nz(a * y0 * (y0 - 1) + (b - 1) * (y0 - e2), "a y0 (y0-1) + (b-1)(y0-eta^2)", "b-1")
    return ShiftState(a, b - 1, tau, tau * eta * p / q, t2 * p * r / (w * q))


def _swap(st: ShiftState) -> ShiftState:
    a, b, tau, eta, y0 = st.a, st.b, st.tau, st.eta, st.y0
    t2, e2 = tau * tau, eta * eta
    num = a * e2 * (y0 - t2) - b * t2 * (y0 - e2)
    den = _nz(a * (y0 - t2) - b * (y0 - e2), "a (y0-tau^2) - b (y0-eta^2)", "a<->b")
    return ShiftState(b, a, tau, eta, num / den)


def _reflect(st: ShiftState) -> ShiftState:
    return ShiftState(st.a, 1 - st.b, st.tau, st.tau / _nz(st.eta, "eta", "1-b"),
                      st.tau * st.tau / _nz(st.y0, "y0", "1-b"))


def param_shift(st: ShiftState, kind: str) -> ShiftState:
    """Apply one of ``b+1, b-1, a<->b, 1-b, a+1, a-1``."""
    if kind == "b+1":
        return _b_plus_one(st)
    if kind == "b-1":
        return _b_minus_one(st)
    if kind == "a<->b":
        return _swap(st)
    if kind == "1-b":
        return _reflect(st)
    if kind in ("a+1", "a-1"):
        inner = "b+1" if kind == "a+1" else "b-1"
        return _swap(param_shift(_swap(st), inner))
    raise TransformError(f"unknown shift {kind!r}; expected one of {', '.join(SHIFT_KINDS)}", "shift")


def apply_shift(expr, st: ShiftState, kind: str):
    """Evaluate ``expr(a, b, tau, eta, y0)`` after the shift."""
    new = param_shift(st, kind)
    return expr(new.a, new.b, new.tau, new.eta, new.y0)


def state_from_context(ctx) -> ShiftState:
    return ShiftState(ctx.a, ctx.b, ctx.tau, ctx.eta, ctx.y0)


def with_values(st: ShiftState, **kw) -> ShiftState:
    return replace(st, **kw)
