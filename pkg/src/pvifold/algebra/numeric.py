"""Arbitrary-precision evaluation of tower elements.

Elements can be evaluated at a complex point or on a truncated Taylor jet
``s0 + eps``, which gives numeric derivatives without forming exact
derivatives of large expressions.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

DEFAULT_DPS = 60
DEFAULT_TOL = mpmath.mpf(10) ** -30


class PoleError(ArithmeticError):
    """A denominator vanishes at the sample point; resample."""


class BranchError(ValueError):
    """A supplied generator value does not satisfy its relation."""


class Jet:
    """Truncated power series c0 + c1*eps + ... + c_{n-1}*eps^(n-1)."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def variable(cls, x0, order: int) -> Jet:
        c = [mp.mpf(0)] * order
        c[0] = mp.mpmathify(x0)
        if order > 1:
            c[1] = mp.mpf(1)
        return cls(c)

    def __len__(self):
        return len(self.c)

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        c = [mp.mpf(0)] * len(self.c)
        c[0] = other
        return Jet(c)

    def __add__(self, other):
        o = self._coerce(other)
        return Jet([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.c])
        n = len(self.c)
        out = [mp.mpf(0)] * n
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(n - i):
                out[i + j] += a * other.c[j]
        return Jet(out)

    __rmul__ = __mul__

    def inverse(self) -> Jet:
        n = len(self.c)
        a0 = self.c[0]
        if a0 == 0:
            raise PoleError("inverse of a jet with zero constant term")
        out = [mp.mpf(0)] * n
        out[0] = 1 / a0
        for k in range(1, n):
            acc = mp.mpf(0)
            for j in range(1, k + 1):
                acc += self.c[j] * out[k - j]
            out[k] = -acc / a0
        return Jet(out)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        return Jet([a / other for a in self.c])

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sqrt(self, root0=None) -> Jet:
        n = len(self.c)
        r0 = mp.sqrt(self.c[0]) if root0 is None else root0
        if r0 == 0:
            raise PoleError("square root of a jet vanishing at the point")
        out = [mp.mpf(0)] * n
        out[0] = r0
        for k in range(1, n):
            acc = self.c[k]
            for j in range(1, k):
                acc -= out[j] * out[k - j]
            out[k] = acc / (2 * r0)
        return Jet(out)

    def value(self):
        return self.c[0]


def _mp_coeffs(r, dps):
    cache = r._mp
    if cache is not None and cache[0] == dps:
        return cache[1], cache[2]
    num = [mp.mpf(int(c.p)) / int(c.q) for c in r.num.coeffs()]
    den = [mp.mpf(int(c.p)) / int(c.q) for c in r.den.coeffs()]
    r._mp = (dps, num, den)
    return num, den


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


_POLE_GUARD = [True]


@contextmanager
def pole_guard(enabled: bool):
    """Switch the near-pole check off (only exact zero division then fails).

    The check protects residual sampling; tracking points close to a pole
    needs genuinely small denominators.
    """
    _POLE_GUARD.append(enabled)
    try:
        yield
    finally:
        _POLE_GUARD.pop()


def _pole_scale():
    return mp.mpf(10) ** (-(mp.dps // 2)) if _POLE_GUARD[-1] else 0


def eval_ratfunc(r, x):
    num, den = _mp_coeffs(r, mp.dps)
    d = _horner(den, x)
    d0 = d.value() if isinstance(d, Jet) else d
    if abs(d0) < _pole_scale():
        raise PoleError("pole at sample point, resample")
    n = _horner(num, x)
    return n / d


def _eval_data(x, k, gens, point):
    if x is None:
        return 0
    if k == 0:
        return eval_ratfunc(x, point)
    a = _eval_data(x[0], k - 1, gens, point)
    if x[1] is None:
        return a
    return a + _eval_data(x[1], k - 1, gens, point) * gens[k - 1]


def generator_values(tower, point, branches: dict | None = None):
    """Values of all generators at ``point`` (number or Jet).

    Unsupplied generators take ``branch * principal sqrt``; supplied values
    are checked against their relation.
    """
    branches = branches or {}
    vals = []
    for i, g in enumerate(tower.gens):
        p = _eval_data(g.radicand, i, vals, point)
        p0 = p.value() if isinstance(p, Jet) else p
        if g.name in branches:
            v0 = mp.mpmathify(branches[g.name])
            if abs(v0 * v0 - p0) > mp.mpf(10) ** (-(mp.dps // 2)) * max(1, abs(p0)):
                raise BranchError(f"value of {g.name} inconsistent with its relation")
        else:
            v0 = g.branch * mp.sqrt(p0)
        if isinstance(p, Jet):
            vals.append(p.sqrt(v0))
        else:
            if abs(v0) < _pole_scale():
                raise PoleError(f"{g.name} vanishes at the sample point, resample")
            vals.append(v0)
    return vals


def eval_numeric(x, s_value, branches: dict | None = None, dps: int = DEFAULT_DPS, gens=None):
    """Evaluate a tower element at ``s = s_value`` with ``dps`` digits."""
    with mp.workdps(dps):
        point = mp.mpmathify(s_value) if not isinstance(s_value, (Fraction,)) else \
            mp.mpf(s_value.numerator) / s_value.denominator
        if gens is None:
            gens = generator_values(x.tower, point, branches)
        return _eval_data(x.data, x.tower.level, gens, point)


def eval_jet(x, s_value, order: int = 3, gens=None):
    """Taylor jet of ``x`` at ``s_value`` (current mp precision)."""
    point = Jet.variable(to_mp(s_value), order)
    if gens is None:
        gens = generator_values(x.tower, point)
    return _eval_data(x.data, x.tower.level, gens, point)


def to_mp(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpmathify(v)


@dataclass
class SamplePolicy:
    lo: Fraction = Fraction(1, 7)
    hi: Fraction = Fraction(6)
    resamples: int = 32
    seed: int = 20240601

    def points(self, count: int):
        """Rational sample points, deterministic for a given seed."""
        rng = random.Random(self.seed)
        while True:
            q = rng.randint(7, 997)
            p = rng.randint(int(self.lo * q) + 1, int(self.hi * q) - 1)
            yield Fraction(p, q)


def sample_points(count: int, evaluate, policy: SamplePolicy | None = None):
    """Collect ``evaluate(point)`` at ``count`` admissible points.

    A point raising :class:`PoleError` is skipped; each requested sample may
    be retried up to ``policy.resamples`` times.
    """
    policy = policy or SamplePolicy()
    out = []
    gen = policy.points(count)
    misses = 0
    while len(out) < count:
        pt = next(gen)
        try:
            out.append((pt, evaluate(pt)))
            misses = 0
        except (PoleError, ZeroDivisionError):
            misses += 1
            if misses > policy.resamples:
                raise PoleError("no admissible sample point within the resampling budget")
    return out
