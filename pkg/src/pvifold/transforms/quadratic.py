"""Quadratic (folding) transformations.

The simple table relates six "top" shapes ``(0,A,B,1)``-like to three
"bottom" shapes ``(A/2,B/2,B/2,A/2+1)``-like through ``tau = sqrt(..t..)`` and
``eta = sqrt(..y..)``.  The two main transformations relate ``(a,b-1,b,a+1)``
resp. ``(a,a,b,b)`` to ``(a,1/2,1/2,b)`` resp. ``(1/2,1/2,a,b)`` and are written
through an Okamoto image ``y1`` of the input, so no derivatives of the
input appear in the output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.tower import Tower, TowerElement
from ..pvi import ParamSolution, ThetaTuple
from .errors import DegenerateFormula, ShapeError, TransformError
from .okamoto import NuTuple, okamoto

HALF = Fraction(1, 2)


def fresh(tower: Tower, stem: str) -> str:
    used = set(tower.names) | {tower.base}
    if stem not in used:
        return stem
    i = 2
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def adjoin_root(tower: Tower, x: TowerElement, stem: str, given=None, sign: int = 1):
    """A square root of ``x``: ``given`` if supplied (checked), else adjoined."""
    x = x.lift(tower)
    if given is not None:
        tower = tower.common(given.tower)
        root = given.lift(tower)
        if root * root != x.lift(tower):
            raise TransformError(f"supplied {stem} does not square to its radicand")
    else:
        tower, root = tower.adjoin_sqrt(x, fresh(tower, stem))
    return tower, root * sign


def _nonzero(x: TowerElement, what: str, step: str) -> TowerElement:
    if x.is_zero():
        raise DegenerateFormula(f"{what} vanishes identically", step)
    return x


# ---------------------------------------------------------------------------
# simple quadratic table

# top rows: theta shape as (slot -> symbol) and tau^2, eta^2 in terms of (y, t)
TOP_ROWS = {
    1: (("0", "A", "B", "1"), lambda y, t: (t, y)),
    2: (("A", "0", "B", "1"), lambda y, t: (1 - t, 1 - y)),
    3: (("A", "B", "0", "1"), lambda y, t: ((t - 1) / t, 1 - y / t)),
    4: (("B", "0", "0", "A+1"), lambda y, t: (t, (y - t) / (y - 1))),
    5: (("0", "B", "0", "A+1"), lambda y, t: (1 - t, 1 - t / y)),
    6: (("0", "0", "B", "A+1"), lambda y, t: ((t - 1) / t, 1 - 1 / y)),
}


def _bottom(row: int, A: Fraction, B: Fraction, tau, eta):
    if row == 7:
        theta = ThetaTuple(A / 2, B / 2, B / 2, A / 2 + 1)
        Y = (tau + 1) * (eta + 1) / _nonzero((tau - 1) * (eta - 1), "(tau-1)(eta-1)", "table_quadratic")
        T = ((tau + 1) / (tau - 1)) ** 2
    elif row == 8:
        theta = ThetaTuple(A / 2, A / 2, B / 2, B / 2 + 1)
        Y = (tau + 1) * (eta + 1) / _nonzero(2 * (eta + tau), "eta+tau", "table_quadratic")
        T = (tau + 1) ** 2 / (4 * tau)
    elif row == 9:
        theta = ThetaTuple(B / 2, A / 2, B / 2, A / 2 + 1)
        Y = 2 * (eta + tau) / _nonzero((tau + 1) * (eta + 1), "(tau+1)(eta+1)", "table_quadratic")
        T = 4 * tau / (tau + 1) ** 2
    else:
        raise TransformError(f"bottom row must be 7, 8 or 9, got {row}", "table_quadratic")
    return theta, Y, T


def top_row_params(theta: ThetaTuple, row: int) -> tuple[Fraction, Fraction]:
    """(A, B) if ``theta`` has exactly the shape of top row ``row``."""
    if row not in TOP_ROWS:
        raise TransformError(f"top row must be 1..6, got {row}", "table_quadratic")
    shape, _ = TOP_ROWS[row]
    vals = theta.as_tuple()
    A = B = None
    for sym, v in zip(shape, vals):
        if sym == "0" and v != 0 or sym == "1" and v != 1:
            break
        if sym == "A":
            A = v
        elif sym == "B":
            B = v
        elif sym == "A+1":
            A = v - 1
    else:
        return A, B
    raise ShapeError(f"theta={theta} does not have the shape {shape} of row {row}", "table_quadratic")


def table_quadratic(sol: ParamSolution, top_row: int, bottom_row: int, swap_ab: bool = False,
                    tau=None, eta=None) -> ParamSolution:
    """Quadratic transformation from a top-row solution to a bottom-row one.

    With ``swap_ab`` the sibling entry (A and B interchanged, eta -> tau/eta)
    is produced.
    """
    A, B = top_row_params(sol.theta, top_row)
    tau2, eta2 = TOP_ROWS[top_row][1](sol.y, sol.t)
    if eta2.is_zero():
        raise DegenerateFormula("eta^2 vanishes identically (degenerate solution)", "table_quadratic")
    tower, tau = adjoin_root(sol.tower, tau2, "tau", tau)
    tower, eta = adjoin_root(tower, eta2, "eta", eta)
    tau = tau.lift(tower)
    if swap_ab:
        A, B = B, A
        eta = tau / eta
    theta, Y, T = _bottom(bottom_row, A, B, tau, eta)
    return ParamSolution(T, Y, theta, f"Q{top_row}{bottom_row}({sol.label})" if sol.label else "")


def manin_quadratic(sol: ParamSolution, tau=None, eta=None) -> ParamSolution:
    """(0,A,B,1) -> (A/2,B/2,B/2,A/2+1)."""
    try:
        return table_quadratic(sol, 1, 7, tau=tau, eta=eta)
    except ShapeError as exc:
        raise ShapeError(f"theta={sol.theta} is not of the shape (0,A,B,1)", "manin") from exc
    except DegenerateFormula as exc:
        raise DegenerateFormula(str(exc), "manin") from exc


# ---------------------------------------------------------------------------
# (a, b-1, b, a+1) -> (a, 1/2, 1/2, b)


def shape_a_b(theta: ThetaTuple, step: str = "kitaevA") -> tuple[Fraction, Fraction]:
    a, b1, b, a1 = theta.as_tuple()
    if b1 != b - 1 or a1 != a + 1:
        raise ShapeError(f"theta={theta} is not of the shape (a,b-1,b,a+1)", step)
    if a == 0:
        raise DegenerateFormula("a = 0 makes the numerator vanish", step)
    return a, b


@dataclass
class FoldContext:
    """Shared data of the (a,b-1,b,a+1) fold: tau^2 = t1, eta^2 = y1."""

    a: Fraction
    b: Fraction
    t1: TowerElement
    y0: TowerElement
    y1: TowerElement
    tau: TowerElement
    eta: TowerElement
    label: str = ""

    @property
    def tower(self) -> Tower:
        return self.tau.tower

    @property
    def A(self) -> Fraction:
        return self.a + self.b - 1

    @property
    def B(self) -> Fraction:
        return self.b - self.a

    @property
    def T1(self) -> TowerElement:
        return ((self.tau + 1) / (self.tau - 1)) ** 2

    @property
    def sqrt_T1(self) -> TowerElement:
        return (self.tau + 1) / (self.tau - 1)

    def Y1(self) -> TowerElement:
        tau, eta = self.tau, self.eta
        return (tau + 1) * (eta + 1) / _nonzero((tau - 1) * (eta - 1), "(tau-1)(eta-1)", "Y1")

    def Y2(self) -> TowerElement:
        tau, eta, y0 = self.tau, self.eta, self.y0
        return (tau + 1) * (y0 + eta) / _nonzero((tau - 1) * (y0 - eta), "(tau-1)(y0-eta)", "Y2")

    def theta_Y1(self) -> ThetaTuple:
        A, B = self.A, self.B
        return ThetaTuple(A / 2, B / 2, B / 2, A / 2 + 1)

    def theta_Y2(self) -> ThetaTuple:
        A, B = self.A, self.B
        return ThetaTuple((B - 1) / 2, (A + 1) / 2, (A + 1) / 2, (B + 1) / 2)

    def solution(self, Y, theta, tag) -> ParamSolution:
        return ParamSolution(self.T1, Y, theta, f"{tag}({self.label})" if self.label else tag)


def fold_context(sol: ParamSolution, tau=None, eta=None, tau_sign: int = 1, eta_sign: int = 1,
                 step: str = "kitaevA") -> FoldContext:
    a, b = shape_a_b(sol.theta, step)
    y1 = okamoto(sol, NuTuple(-a, b - 1, -b, 1 - a))
    tower, tau = adjoin_root(sol.tower, sol.t, "tau", tau, tau_sign)
    tower, eta = adjoin_root(tower, y1.y, "eta", eta, eta_sign)
    return FoldContext(a, b, sol.t.lift(tower), sol.y.lift(tower), y1.y.lift(tower),
                       tau.lift(tower), eta.lift(tower), sol.label)


def fold_Y0(ctx: FoldContext) -> TowerElement:
    a, b, tau, eta, y0 = ctx.a, ctx.b, ctx.tau, ctx.eta, ctx.y0
    den = (tau - 1) * (a * eta * (y0 - 1) - (b - 1) * (y0 - eta * eta))
    return a * (tau + 1) * (eta + 1) * (y0 + eta) / _nonzero(den, "denominator of Y0", "kitaevA")


def fold_Y0_tilde(ctx: FoldContext) -> TowerElement:
    """Solution of (a,1/2,1/2,b+1)."""
    a, b, tau, eta, y0 = ctx.a, ctx.b, ctx.tau, ctx.eta, ctx.y0
    den = (1 - tau) * (a * eta * (y0 - tau * tau) + b * tau * (y0 - eta * eta))
    return a * (tau + 1) * (eta + tau) * (y0 + eta * tau) / _nonzero(den, "denominator of Y0~", "kitaevA_b1")


def fold_Y0_half_display(ctx: FoldContext) -> TowerElement:
    """Closed form of p2 applied to the (a,1/2,1/2,b+1) solution."""
    a, b, tau, eta, y0 = ctx.a, ctx.b, ctx.tau, ctx.eta, ctx.y0
    e2 = eta * eta
    num = (tau + 1) * (2 * a * (eta + tau) * (y0 + eta) + (b - a) * (tau - 1) * (y0 - e2))
    den = (tau - 1) * (2 * a * (eta + tau) * (y0 - eta) + (b - a) * (tau + 1) * (y0 - e2))
    return num / _nonzero(den, "denominator", "kitaevA_half")


def kitaev_A(sol: ParamSolution, tau=None, eta=None, tau_sign: int = 1, eta_sign: int = 1) -> ParamSolution:
    """(a,b-1,b,a+1; t1) -> (a,1/2,1/2,b; T1), T1 = ((tau+1)/(tau-1))^2."""
    ctx = fold_context(sol, tau, eta, tau_sign, eta_sign)
    return ctx.solution(fold_Y0(ctx), ThetaTuple(ctx.a, HALF, HALF, ctx.b), "kitaevA")


def kitaev_A_b_plus_one(sol: ParamSolution, tau=None, eta=None, tau_sign: int = 1,
                        eta_sign: int = 1) -> ParamSolution:
    """(a,b-1,b,a+1; t1) -> (a,1/2,1/2,b+1; T1)."""
    ctx = fold_context(sol, tau, eta, tau_sign, eta_sign, step="kitaevA_b1")
    return ctx.solution(fold_Y0_tilde(ctx), ThetaTuple(ctx.a, HALF, HALF, ctx.b + 1), "kitaevA_b1")


def kitaev_A_half(sol: ParamSolution, tau=None, eta=None, tau_sign: int = 1,
                  eta_sign: int = 1) -> ParamSolution:
    """(a,b-1,b,a+1; t1) -> (1/2,a,b,1/2; T1), as p2 of the b+1 variant."""
    from .fractional import fl_apply
    out = fl_apply(kitaev_A_b_plus_one(sol, tau, eta, tau_sign, eta_sign), "p2")
    out.label = f"kitaevA_half({sol.label})" if sol.label else "kitaevA_half"
    return out


# ---------------------------------------------------------------------------
# (a, a, b, b) -> (1/2, 1/2, a, b)


def shape_aabb(theta: ThetaTuple, step: str = "kitaevB") -> tuple[Fraction, Fraction]:
    a, a2, b, b2 = theta.as_tuple()
    if a != a2 or b != b2:
        raise ShapeError(f"theta={theta} is not of the shape (a,a,b,b)", step)
    return a, b


@dataclass
class SymContext:
    """Data of the (a,a,b,b) fold: rt^2 = t2^2 - t2, rg^2 = g1^2 - g1."""

    a: Fraction
    b: Fraction
    t2: TowerElement
    g0: TowerElement
    g1: TowerElement
    rt: TowerElement
    rg: TowerElement
    label: str = ""

    @property
    def tower(self) -> Tower:
        return self.rt.tower

    def T2(self) -> TowerElement:
        return HALF + (self.t2 - HALF) / (2 * self.rt)

    def G0(self) -> TowerElement:
        a, b, t2, g0, g1, rt, rg = self.a, self.b, self.t2, self.g0, self.g1, self.rt, self.rg
        inner = _nonzero(a * rg - (b - 1) * (g0 - g1), "a*r_g - (b-1)(g0-g1)", "kitaevB")
        return (HALF + (t2 - g1 + rg) / (2 * rt)
                + (a - b + 1) * (g0 - g1) * (g1 - HALF - rg) / (2 * inner * rt))

    def fold_roots(self) -> tuple[TowerElement, TowerElement]:
        """tau and eta of the (a,b-1,b,a+1) form under t1 = t2/(t2-1), y1 = g1/(g1-1)."""
        return self.rt / (self.t2 - 1), -self.rg / (self.g1 - 1)


def sym_context(sol: ParamSolution, rt=None, rg=None, rt_sign: int = 1, rg_sign: int = 1) -> SymContext:
    a, b = shape_aabb(sol.theta)
    g1 = okamoto(sol, NuTuple(-a, -a, -b, b))
    t2 = sol.t
    tower, rt = adjoin_root(sol.tower, t2 * t2 - t2, "rt", rt, rt_sign)
    g1y = g1.y.lift(tower)
    tower, rg = adjoin_root(tower, g1y * g1y - g1y, "rg", rg, rg_sign)
    return SymContext(a, b, t2.lift(tower), sol.y.lift(tower), g1y.lift(tower),
                      rt.lift(tower), rg.lift(tower), sol.label)


def kitaev_B(sol: ParamSolution, rt=None, rg=None, rt_sign: int = 1, rg_sign: int = 1) -> ParamSolution:
    """(a,a,b,b; t2) -> (1/2,1/2,a,b; T2), T2 = 1/2 + (t2 - 1/2)/(2 sqrt(t2^2 - t2))."""
    ctx = sym_context(sol, rt, rg, rt_sign, rg_sign)
    label = f"kitaevB({sol.label})" if sol.label else "kitaevB"
    return ParamSolution(ctx.T2(), ctx.G0(), ThetaTuple(HALF, HALF, ctx.a, ctx.b), label)


def alt_notation_G0(ctx: SymContext) -> tuple[TowerElement, TowerElement]:
    """G0 recomputed in the variables theta=2t2-1, psi=2g1-1, phi=2g0-1.

    Returns the two equivalent forms (the psi-form and the shorter phi-form).
    The roots are sqrt(theta^2-1) = 2 rt and sqrt(psi^2-1) = 2 rg.
    """
    a, b = ctx.a, ctx.b
    th = 2 * ctx.t2 - 1
    psi = 2 * ctx.g1 - 1
    phi = 2 * ctx.g0 - 1
    sth = 2 * ctx.rt
    sps = 2 * ctx.rg
    inner = _nonzero(a * sps - (b - 1) * (phi - psi), "a*sqrt(psi^2-1) - (b-1)(phi-psi)", "alt_notation")
    long_form = (HALF + (th - psi + sps) / (2 * sth)
                 + (a - b + 1) * (phi - psi) * (psi - sps) / (2 * inner * sth))
    short_form = HALF + th / (2 * sth) + a * (psi * phi - 1 - phi * sps) / (2 * inner * sth)
    return long_form, short_form


def alt_notation_crosscheck(sol: ParamSolution, rt=None, rg=None, rt_sign: int = 1,
                            rg_sign: int = 1) -> bool:
    """Both alternative-variable forms of G0 agree exactly with the direct formula."""
    ctx = sym_context(sol, rt, rg, rt_sign, rg_sign)
    th = 2 * ctx.t2 - 1
    psi = 2 * ctx.g1 - 1
    sth, sps = 2 * ctx.rt, 2 * ctx.rg
    if sth * sth != th * th - 1 or sps * sps != psi * psi - 1:
        return False
    g0 = ctx.G0()
    long_form, short_form = alt_notation_G0(ctx)
    return long_form == g0 and short_form == g0
