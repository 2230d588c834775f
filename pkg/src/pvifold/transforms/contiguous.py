"""Derivative-free relations among solutions linked by Okamoto maps.

All functions work on a :class:`FoldContext`, i.e. an ``(a,b-1,b,a+1)``
solution ``y0`` with ``tau^2 = t1`` and ``eta^2 = y1 = K[-a,b-1,-b,1-a] y0``.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra.tower import TowerElement
from ..pvi import ParamSolution, ThetaTuple, derivative_along
from .errors import DegenerateFormula, TransformError
from .okamoto import NuTuple, okamoto
from .quadratic import HALF, FoldContext, _nonzero, fold_context, fold_Y0


def _common(*elems: TowerElement) -> list[TowerElement]:
    tower = elems[0].tower
    for e in elems[1:]:
        tower = tower.common(e.tower)
    return [e.lift(tower) for e in elems]


def companion_y2(ctx_or_sol, a=None, b=None) -> ParamSolution:
    """y2 = K[a, b-1, -b, a+1] y0, the companion of y1 with y1*y2 = y0^2."""
    if isinstance(ctx_or_sol, FoldContext):
        sol = ParamSolution(ctx_or_sol.t1, ctx_or_sol.y0,
                            ThetaTuple(ctx_or_sol.a, ctx_or_sol.b - 1, ctx_or_sol.b, ctx_or_sol.a + 1))
        a, b = ctx_or_sol.a, ctx_or_sol.b
    else:
        sol = ctx_or_sol
    return okamoto(sol, NuTuple(a, b - 1, -b, a + 1))


def contiguous_y1y2(y1, y2, y0) -> bool:
    """True iff y1 * y2 == y0^2 exactly."""
    vals = [v.y if isinstance(v, ParamSolution) else v for v in (y1, y2, y0)]
    try:
        y1e, y2e, y0e = _common(*vals)
    except Exception as exc:  # towers that are not nested
        raise TransformError(f"tower mismatch: {exc}", "contiguous_y1y2") from exc
    return (y1e * y2e - y0e * y0e).is_zero()


def contiguous_Y0(Y1: ParamSolution, Y2: ParamSolution, a, b) -> ParamSolution:
    """Y0 = 2a Y1 Y2 / ((a-b+1) Y1 + (a+b-1) Y2), a solution of (a,1/2,1/2,b)."""
    a, b = Fraction(a), Fraction(b)
    y1, y2 = _common(Y1.y, Y2.y)
    den = (a - b + 1) * y1 + (a + b - 1) * y2
    Y0 = 2 * a * y1 * y2 / _nonzero(den, "denominator", "contiguous_Y0")
    return ParamSolution(Y1.t.lift(y1.tower), Y0, ThetaTuple(a, HALF, HALF, b), "contiguous_Y0")


def deta_dtau_rhs(ctx: FoldContext) -> TowerElement:
    A, B = ctx.A, ctx.B
    tau, eta, y0 = ctx.tau, ctx.eta, ctx.y0
    e2, t2 = eta * eta, tau * tau
    num = eta * (A * (e2 - t2) * (y0 - 1) + (1 - B) * (e2 - 1) * (y0 - t2))
    den = tau * (t2 - 1) * (y0 - e2)
    return num / _nonzero(den, "tau(tau^2-1)(y0-eta^2)", "deta_dtau")


def deta_dtau_identity(ctx: FoldContext) -> bool:
    """d(eta)/d(tau) along the curve equals the derivative-free expression."""
    return derivative_along(ctx.eta, ctx.tau) == deta_dtau_rhs(ctx)


# ---------------------------------------------------------------------------
# (1/2, a, b, -1/2) through two more contiguous steps


def theta_Y3(a, b) -> ThetaTuple:
    return ThetaTuple(-(a + b) / 2, (a - b - 1) / 2, (b - a - 1) / 2, (a + b) / 2)


def nu_Y3(a, b) -> NuTuple:
    return NuTuple((1 - a - b) / 2, (a - b) / 2, (b - a) / 2, (a + b + 1) / 2)


def nu_Y4(a, b) -> NuTuple:
    return NuTuple((a + b) / 2, (b - a + 1) / 2, (a - b + 1) / 2, (a + b) / 2)


def y3_formula(Y1, Y2, T1, a, b):
    num = (2 * a * Y1 * Y2 + (b - a) * T1 * Y1 - (a + b) * T1 * Y2) * Y1
    den = Y1 * Y1 + (2 * a - 1) * Y1 * Y2 + (b - a - 1) * T1 * Y1 - (a + b - 1) * T1 * Y2
    return num / _nonzero(den, "denominator of Y3", "y4_chain")


def y4_formula(Y1, Y3, T1, a, b):
    num = ((a - b) * (T1 - 1) * (Y3 - Y1) * Y3 - Y1 * Y3 * Y3 + (T1 + 1) * Y3 * Y3
           - 2 * T1 * Y3 + T1 * Y1) * Y3
    den = ((Y3 - Y1) * ((a + b) * (Y3 * Y3 + T1) - 2 * (b * T1 + a) * Y3 + Y3 * Y3)
           - Y1 * Y3 * Y3 + (T1 + 1) * Y1 * Y3 - T1 * Y3)
    return num / _nonzero(den, "denominator of Y4", "y4_chain")


def y4_compact(ctx: FoldContext) -> TowerElement:
    """Closed form of the (a,b,3/2,1/2; T1/(T1-1)) companion of Y4 in tau, eta, y0."""
    a, b, tau, eta, y0 = ctx.a, ctx.b, ctx.tau, ctx.eta, ctx.y0
    e2, t2 = eta * eta, tau * tau
    n1 = (2 * a * eta * (eta + 1) * (y0 - t2) + (a + b - 1) * (tau - 1) * (eta - tau) * (y0 - e2)
          - 2 * b * tau * (eta + 1) * (y0 - e2))
    d1 = 2 * a * (eta - tau) * (y0 + eta) + (a - b) * (tau + 1) * (y0 - e2)
    n2 = (2 * a * (eta + 1) * (y0 * y0 - t2 * e2) - (a + b) * (tau + 1) * (y0 + tau * eta) * (y0 - e2)
          - (tau - 1) * (y0 - tau * eta) * (y0 - e2))
    d2 = (4 * a * a * (e2 - t2) * (y0 + eta) ** 2 + 4 * a * (a - b) * (eta + t2) * (y0 + eta) * (y0 - e2)
          - ((a - b) ** 2 - 1) * (t2 - 1) * (y0 - e2) ** 2)
    den = tau * _nonzero(d1, "first denominator", "y4_compact") * _nonzero(d2, "second denominator", "y4_compact")
    return a * (tau + 1) * n1 * n2 / den


class Y4Chain:
    """Y1, Y2, Y3, Y4 on the fold of one input, computed by contiguous formulas."""

    def __init__(self, ctx: FoldContext):
        a, b = ctx.a, ctx.b
        if a + b == 0:
            raise DegenerateFormula("a + b = 0 makes the Y3/Y4 coefficients degenerate", "y4_chain")
        self.ctx = ctx
        T1 = ctx.T1
        self.T1 = T1
        self.Y1 = ctx.Y1()
        self.Y2 = ctx.Y2()
        self.Y3 = y3_formula(self.Y1, self.Y2, T1, a, b)
        self.Y4 = y4_formula(self.Y1, self.Y3, T1, a, b)

    def solutions(self) -> dict[str, ParamSolution]:
        ctx, a, b = self.ctx, self.ctx.a, self.ctx.b
        return {
            "Y1": ctx.solution(self.Y1, ctx.theta_Y1(), "Y1"),
            "Y2": ctx.solution(self.Y2, ctx.theta_Y2(), "Y2"),
            "Y3": ctx.solution(self.Y3, theta_Y3(a, b), "Y3"),
            "Y4": ctx.solution(self.Y4, ThetaTuple(HALF, a, b, -HALF), "Y4"),
        }

    def okamoto_images(self) -> tuple[TowerElement, TowerElement]:
        """Y3, Y4 recomputed as Okamoto images of Y1 (with derivatives)."""
        sols = self.solutions()
        y3 = okamoto(sols["Y1"], nu_Y3(self.ctx.a, self.ctx.b), check=False)
        y4 = okamoto(ParamSolution(self.T1, y3.y, y3.theta), nu_Y4(self.ctx.a, self.ctx.b), check=False)
        return y3.y, y4.y

    def compact_companion(self) -> ParamSolution:
        """The shorter (a,b,3/2,1/2) form, checked against the row s3p1 image of Y4."""
        from .fractional import fl_apply
        ref = fl_apply(self.solutions()["Y4"], "s3p1")
        val = y4_compact(self.ctx)
        if val != ref.y:
            raise TransformError("compact form disagrees with the image of Y4", "y4_compact")
        return ParamSolution(ref.t, val, ThetaTuple(self.ctx.a, self.ctx.b, Fraction(3, 2), HALF), "Y4_compact")


def y4_chain(sol: ParamSolution, **branches) -> Y4Chain:
    return Y4Chain(fold_context(sol, step="y4_chain", **branches))


# ---------------------------------------------------------------------------
# back from the fold


def inverse_quadratic(Y1: ParamSolution, Y2: ParamSolution, sqrt_T1: TowerElement) -> TowerElement:
    """y0 = (Y1 + r)(Y2 + r) / ((Y1 - r)(Y2 - r)) with r = sqrt(T1)."""
    y1, y2, r = _common(Y1.y, Y2.y, sqrt_T1)
    den = (y1 - r) * (y2 - r)
    return (y1 + r) * (y2 + r) / _nonzero(den, "(Y1 - sqrt T1)(Y2 - sqrt T1)", "inverse_quadratic")


def inverse_quadratic_check(ctx: FoldContext) -> bool:
    """Forward fold followed by the inverse relation returns y0."""
    Y1 = ctx.solution(ctx.Y1(), ctx.theta_Y1(), "Y1")
    Y2 = ctx.solution(ctx.Y2(), ctx.theta_Y2(), "Y2")
    return inverse_quadratic(Y1, Y2, ctx.sqrt_T1) == ctx.y0


def contiguous_matches_fold(ctx: FoldContext) -> bool:
    """The contiguous Y0 from (Y1, Y2) equals the direct fold formula."""
    Y1 = ctx.solution(ctx.Y1(), ctx.theta_Y1(), "Y1")
    Y2 = ctx.solution(ctx.Y2(), ctx.theta_Y2(), "Y2")
    return contiguous_Y0(Y1, Y2, ctx.a, ctx.b).y == fold_Y0(ctx)
