"""Okamoto transformations K[nu0, nu1, nuT, nuInf]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..pvi import (DegenerateSolution, ParamSolution, ThetaTuple, _q, check_nondegenerate, derivative_along,
                   theta_equivalent)
from .errors import FixedSolutionError, TransformError


@dataclass(frozen=True)
class NuTuple:
    nu0: Fraction
    nu1: Fraction
    nuT: Fraction
    nuInf: Fraction

    def __post_init__(self):
        for name in ("nu0", "nu1", "nuT", "nuInf"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def of(cls, *vals) -> NuTuple:
        if len(vals) == 1:
            vals = tuple(vals[0])
        return cls(*vals)

    def __iter__(self):
        return iter((self.nu0, self.nu1, self.nuT, self.nuInf))

    @property
    def half_sum(self) -> Fraction:
        return sum(self, Fraction(0)) / 2

    def target_theta(self) -> ThetaTuple:
        h = self.half_sum
        return ThetaTuple(*(v - h for v in self))

    def __str__(self):
        return "[" + ",".join(str(v) for v in self) + "]"


def compatible(theta: ThetaTuple, nu: NuTuple) -> bool:
    a, b, c, d = theta
    return (nu.nu0 in (a, -a) and nu.nu1 in (b, -b) and nu.nuT in (c, -c)
            and nu.nuInf in (d, 2 - d))


def z_function(y, t, nu: NuTuple):
    """Z(t) of the Okamoto operator, with y' taken along the curve."""
    yp = derivative_along(y, t)
    return ((t - 1) * yp - nu.nu0) / y - (t * yp + nu.nu1) / (y - 1) + (yp - 1 - nu.nuT) / (y - t)


def okamoto_y(y, t, nu: NuTuple):
    """K[nu] y without any theta bookkeeping."""
    total = nu.nu0 + nu.nu1 + nu.nuT + nu.nuInf
    if total == 0:
        return y
    z = z_function(y, t, nu)
    if z.is_zero():
        raise FixedSolutionError(f"Z vanishes identically for nu={nu}", "okamoto")
    return y + total / z


def okamoto(sol: ParamSolution, nu: NuTuple, check: bool = True) -> ParamSolution:
    """Apply K[nu]; the result solves the equation with theta = nu - (sum nu)/2."""
    nu = nu if isinstance(nu, NuTuple) else NuTuple.of(nu)
    if check and not compatible(sol.theta, nu):
        raise TransformError(f"nu={nu} is not a sign choice for theta={sol.theta}", "okamoto")
    try:
        check_nondegenerate(sol)
    except DegenerateSolution as exc:
        raise TransformError(str(exc), "okamoto") from exc
    y = okamoto_y(sol.y, sol.t, nu)
    label = f"K{nu}({sol.label})" if sol.label else ""
    return ParamSolution(sol.t, y, nu.target_theta(), label)


def okamoto_inverse_nu(nu: NuTuple) -> NuTuple:
    """nu - Theta: applying K[nu - Theta] after K[nu] returns the input."""
    h = nu.half_sum
    return NuTuple(*(v - h for v in nu))


def okamoto_flip_nu(nu: NuTuple) -> NuTuple:
    """[nu0 - Theta, nu1 - Theta, Theta - nuT, nuInf - Theta]."""
    h = nu.half_sum
    return NuTuple(nu.nu0 - h, nu.nu1 - h, h - nu.nuT, nu.nuInf - h)


def okamoto_compose_identity_check(sol: ParamSolution, nu: NuTuple) -> bool:
    """Check both composition identities of K exactly on ``sol``.

    K[nu0-Th, nu1-Th, Th-nuT, nuInf-Th] K[nu] y = K[nu0, nu1, -nuT, nuInf] y and
    K[nu - Th] K[nu] y = y.
    """
    first = okamoto(sol, nu)
    lhs = okamoto(first, okamoto_flip_nu(nu))
    rhs = okamoto(sol, NuTuple(nu.nu0, nu.nu1, -nu.nuT, nu.nuInf))
    back = okamoto(first, okamoto_inverse_nu(nu))
    return lhs.y == rhs.y and back.y == sol.y


def relabel_nu(row, nu: NuTuple) -> NuTuple:
    """nu for the same Okamoto map after a fractional-linear row.

    The row permutes ``(nu0, nu1, nuT, nuInf - 1)``; unlike theta the last
    slot is not sign-symmetric, so this is not ``row.relabel``.
    """
    from .fractional import fl_row

    vec = fl_row(row).permute((nu.nu0, nu.nu1, nu.nuT, nu.nuInf - 1))
    return NuTuple(vec[0], vec[1], vec[2], vec[3] + 1)


def fl_commutes(sol: ParamSolution, nu: NuTuple, row) -> bool:
    """fl o K[nu] equals K[relabelled nu] o fl on ``sol``, exactly."""
    from .fractional import fl_apply

    lhs = fl_apply(okamoto(sol, nu), row)
    rhs = okamoto(fl_apply(sol, row), relabel_nu(row, nu), check=False)
    return lhs.t == rhs.t and lhs.y == rhs.y and theta_equivalent(lhs.theta, rhs.theta)
