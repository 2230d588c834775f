"""Univariate rational functions over Q in reduced form.

A ``RatFunc`` is ``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic.
That normal form is unique, so equality is structural.  Polynomial arithmetic
is delegated to FLINT's ``fmpq_poly``.
"""

from __future__ import annotations

from fractions import Fraction

import flint
from flint.utils.flint_exceptions import DomainError
from flint import fmpq, fmpq_poly

_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def as_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return fmpq(c)
    if isinstance(c, flint.fmpz):
        return fmpq(c)
    raise TypeError(f"not an exact rational: {c!r}")


def fmpq_to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class RatFunc:
    __slots__ = ("num", "den", "_mp")

    def __init__(self, num: fmpq_poly, den: fmpq_poly = _ONE_POLY, _reduced: bool = False):
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = _ONE_POLY
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._mp = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(fmpq_poly([as_fmpq(c)]), _ONE_POLY, _reduced=True)

    @classmethod
    def var(cls) -> RatFunc:
        return cls(fmpq_poly([0, 1]), _ONE_POLY, _reduced=True)

    @classmethod
    def poly(cls, p: fmpq_poly) -> RatFunc:
        return cls(p, _ONE_POLY, _reduced=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_const(self) -> bool:
        return self.den.is_one() and self.num.degree() <= 0

    def const_value(self) -> fmpq:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num[0]

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def size(self) -> int:
        return self.num.length() + self.den.length()

    # arithmetic ---------------------------------------------------------
    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other: RatFunc) -> RatFunc:
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * other.den + other.num, other.den, _reduced=True)
        if other.den.is_one():
            return RatFunc(self.num + other.num * self.den, self.den, _reduced=True)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den, _reduced=True)
        d1 = self.den // g
        d2 = other.den // g
        num = self.num * d2 + other.num * d1
        if num.is_zero():
            return ZERO
        # only factors of g can cancel
        h = num.gcd(g)
        if not h.is_one():
            num = num // h
            g = g // h
        return RatFunc(num, d1 * d2 * g, _reduced=True)

    def __sub__(self, other: RatFunc) -> RatFunc:
        return self + (-other)

    def __mul__(self, other: RatFunc) -> RatFunc:
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, _ONE_POLY, _reduced=True)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num // g1, other.den // g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num // g2, self.den // g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return RatFunc(num, den, _reduced=True)

    def scale(self, c) -> RatFunc:
        c = as_fmpq(c)
        if c == 0:
            return ZERO
        return RatFunc(self.num * c, self.den, _reduced=True)

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.leading_coefficient()
        return RatFunc(self.den / lc, self.num / lc, _reduced=True)

    def __truediv__(self, other: RatFunc) -> RatFunc:
        return self * other.inverse()

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def derivative(self) -> RatFunc:
        if self.den.is_one():
            return RatFunc(self.num.derivative(), _ONE_POLY, _reduced=True)
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    # square roots -------------------------------------------------------
    def sqrt(self) -> RatFunc | None:
        """Exact square root in Q(s), or None if this is not a square."""
        if self.num.is_zero():
            return ZERO
        try:
            n = self.num.sqrt()
            d = self.den.sqrt()
        except (DomainError, ValueError):
            return None
        return RatFunc(n, d)

    def squarefree_class(self) -> tuple[fmpq, list[fmpq_poly]]:
        """Return ``(c, [f_i])`` with self = square * c * prod(f_i), f_i monic, squarefree, coprime."""
        poly = self.num * self.den
        content, factors = poly.factor_squarefree()
        c = as_fmpq(content)
        odd = []
        for f, e in factors:
            f = fmpq_poly(f)
            lc = f.leading_coefficient()
            f = f / lc
            if e % 2:
                c *= lc
                odd.append(f)
        return squarefree_rational(c), odd

    # composition and evaluation -----------------------------------------
    def coeffs(self) -> tuple[list[fmpq], list[fmpq]]:
        return self.num.coeffs(), self.den.coeffs()

    def __call__(self, value):
        return self.num(value) / self.den(value)

    def __repr__(self):
        if self.den.is_one():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"


def squarefree_rational(c: fmpq) -> fmpq:
    """Squarefree representative of the square class of a nonzero rational."""
    n = int(c.p) * int(c.q)
    sign = -1 if n < 0 else 1
    n = abs(n)
    if n.bit_length() <= 160:
        out = 1
        for p, e in flint.fmpz(n).factor():
            if e % 2:
                out *= int(p)
        return fmpq(sign * out)
    # large constants: strip small square factors only
    out = 1
    p = 2
    while p < 20000 and n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    r = flint.fmpz(n).isqrt()
    if r * r == n:
        n = 1
    return fmpq(sign * out * n)


ZERO = RatFunc(_ZERO_POLY, _ONE_POLY, _reduced=True)
ONE = RatFunc(_ONE_POLY, _ONE_POLY, _reduced=True)
