"""Square-root towers over Q(s) and their elements.

A tower ``Q(s)[u_1, ..., u_k]`` with ``u_i^2 = p_i`` (``p_i`` in the tower of the
first ``i-1`` generators) is stored level by level: an element at level ``k``
is a pair ``(a, b)`` meaning ``a + b*u_k`` with ``a, b`` at level ``k-1``, and
level 0 is a reduced :class:`RatFunc`.  ``None`` is the zero element at every
level.  Because every tower built here is a field (radicands are checked not to
be squares), the basis ``{u^m}`` is free over Q(s) and this form is canonical:
two elements are equal iff their data compare equal.

Division rationalises with the conjugate ``a - b*u_k``, so denominators never
contain generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from flint import fmpq, fmpq_poly

from .ratfunc import ONE, ZERO, RatFunc, as_fmpq, squarefree_rational


class TowerError(ValueError):
    """Incompatible towers or an invalid extension."""


class NotSquare(Exception):
    pass


_NOT_FOUND = object()


# ---------------------------------------------------------------------------
# level-wise arithmetic on raw data


def _lift(x, levels: int):
    if x is None:
        return None
    for _ in range(levels):
        x = (x, None)
    return x


def _add(x, y, k):
    if x is None:
        return y
    if y is None:
        return x
    if k == 0:
        r = x + y
        return None if r.is_zero() else r
    a = _add(x[0], y[0], k - 1)
    b = _add(x[1], y[1], k - 1)
    if a is None and b is None:
        return None
    return (a, b)


def _neg(x, k):
    if x is None:
        return None
    if k == 0:
        return -x
    return (_neg(x[0], k - 1), _neg(x[1], k - 1))


def _sub(x, y, k):
    return _add(x, _neg(y, k), k)


def _scale(x, c: fmpq, k):
    if x is None or c == 0:
        return None
    if k == 0:
        return x.scale(c)
    return (_scale(x[0], c, k - 1), _scale(x[1], c, k - 1))


def _mul(x, y, k, rad):
    if x is None or y is None:
        return None
    if k == 0:
        return x * y
    a, b = x
    c, d = y
    km = k - 1
    if b is None:
        if d is None:
            return (_mul(a, c, km, rad), None)
        return (_mul(a, c, km, rad), _mul(a, d, km, rad))
    if d is None:
        return (_mul(a, c, km, rad), _mul(b, c, km, rad))
    ac = _mul(a, c, km, rad)
    bdp = _mul(_mul(b, d, km, rad), rad[km], km, rad)
    first = _add(ac, bdp, km)
    second = _add(_mul(a, d, km, rad), _mul(b, c, km, rad), km)
    if first is None and second is None:
        return None
    return (first, second)


def _sqr(x, k, rad):
    if x is None:
        return None
    if k == 0:
        return x * x
    a, b = x
    km = k - 1
    if b is None:
        return (_sqr(a, km, rad), None)
    first = _add(_sqr(a, km, rad), _mul(_sqr(b, km, rad), rad[km], km, rad), km)
    second = _scale(_mul(a, b, km, rad), fmpq(2), km)
    if first is None and second is None:
        return None
    return (first, second)


def _norm(x, k, rad):
    """Norm from level k down to level k-1: a^2 - b^2 p_k."""
    a, b = x
    km = k - 1
    if b is None:
        return _sqr(a, km, rad)
    return _sub(_sqr(a, km, rad), _mul(_sqr(b, km, rad), rad[km], km, rad), km)


def _inv(x, k, rad):
    if x is None:
        raise ZeroDivisionError("division by the zero element")
    if k == 0:
        return x.inverse()
    a, b = x
    km = k - 1
    if b is None:
        return (_inv(a, km, rad), None)
    n_inv = _inv(_norm(x, k, rad), km, rad)
    return (_mul(a, n_inv, km, rad), _neg(_mul(b, n_inv, km, rad), km))


def _deriv(x, k, rad, dlog):
    if x is None:
        return None
    if k == 0:
        r = x.derivative()
        return None if r.is_zero() else r
    a, b = x
    km = k - 1
    da = _deriv(a, km, rad, dlog)
    db = _add(_deriv(b, km, rad, dlog), _mul(b, dlog[km], km, rad), km)
    if da is None and db is None:
        return None
    return (da, db)


def _sqrt(x, k, rad):
    if x is None:
        return None
    if k == 0:
        r = x.sqrt()
        return _NOT_FOUND if r is None else r
    a, b = x
    km = k - 1
    if b is None:
        r = _sqrt(a, km, rad)
        if r is not _NOT_FOUND:
            return (r, None) if r is not None else None
        r = _sqrt(_mul(a, _inv(rad[km], km, rad), km, rad), km, rad)
        if r is not _NOT_FOUND:
            return (None, r)
        return _NOT_FOUND
    n = _sqrt(_norm(x, k, rad), km, rad)
    if n is _NOT_FOUND:
        return _NOT_FOUND
    half = fmpq(1, 2)
    for nn in (n, _neg(n, km)):
        w = _scale(_add(a, nn, km), half, km)
        if w is None:
            continue
        c = _sqrt(w, km, rad)
        if c is _NOT_FOUND or c is None:
            continue
        d = _mul(b, _inv(_scale(c, fmpq(2), km), km, rad), km, rad)
        cand = (c, d)
        if _sqr(cand, k, rad) == x:
            return cand
    return _NOT_FOUND


def _flip(x, k, j):
    """Apply the automorphism u_j -> -u_j (j is 1-based level)."""
    if x is None:
        return None
    if k == j:
        return (x[0], _neg(x[1], k - 1))
    return (_flip(x[0], k - 1, j), _flip(x[1], k - 1, j))


def _flatten(x, k, mask=0, out=None):
    if out is None:
        out = {}
    if x is None:
        return out
    if k == 0:
        out[mask] = x
        return out
    _flatten(x[0], k - 1, mask, out)
    _flatten(x[1], k - 1, mask | (1 << (k - 1)), out)
    return out


def _unflatten(terms: dict, k: int):
    if not terms:
        return None
    if k == 0:
        r = terms.get(0)
        return None if r is None or r.is_zero() else r
    bit = 1 << (k - 1)
    lo = {m: v for m, v in terms.items() if not m & bit}
    hi = {m ^ bit: v for m, v in terms.items() if m & bit}
    a = _unflatten(lo, k - 1)
    b = _unflatten(hi, k - 1)
    if a is None and b is None:
        return None
    return (a, b)


def _size(x, k):
    if x is None:
        return 0
    if k == 0:
        return x.size()
    return _size(x[0], k - 1) + _size(x[1], k - 1)


def _map_leaves(x, k, fn):
    if x is None:
        return None
    if k == 0:
        r = fn(x)
        return None if r.is_zero() else r
    a = _map_leaves(x[0], k - 1, fn)
    b = _map_leaves(x[1], k - 1, fn)
    if a is None and b is None:
        return None
    return (a, b)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    radicand: object  # raw data at level (index of the generator)
    branch: int = 1


class Tower:
    """An immutable square-root tower over Q(base)."""

    def __init__(self, base: str = "s", gens: tuple[Generator, ...] = ()):
        self.base = base
        self.gens = tuple(gens)
        self._rad = [g.radicand for g in self.gens]
        self._dlog = None
        self._key = (base, tuple((g.name, g.branch) for g in self.gens))

    @property
    def level(self) -> int:
        return len(self.gens)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.gens)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tower):
            return NotImplemented
        return self._key == other._key and self._rad == other._rad

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        rels = ", ".join(f"{g.name}^2={TowerElement(self.prefix(i), g.radicand)}"
                         for i, g in enumerate(self.gens))
        return f"Tower({self.base}; {rels})"

    def prefix(self, i: int) -> Tower:
        if i == self.level:
            return self
        return Tower(self.base, self.gens[:i])

    def is_prefix_of(self, other: Tower) -> bool:
        if self.base != other.base or self.level > other.level:
            return False
        return other.prefix(self.level) == self

    def index(self, name: str) -> int:
        for i, g in enumerate(self.gens):
            if g.name == name:
                return i
        raise KeyError(name)

    # element constructors -----------------------------------------------
    def const(self, c) -> TowerElement:
        c = as_fmpq(c)
        return TowerElement(self, _lift(RatFunc.const(c) if c != 0 else None, self.level))

    def one(self) -> TowerElement:
        return self.const(1)

    def zero(self) -> TowerElement:
        return TowerElement(self, None)

    @property
    def s(self) -> TowerElement:
        return TowerElement(self, _lift(RatFunc.var(), self.level))

    def ratfunc(self, r: RatFunc) -> TowerElement:
        return TowerElement(self, _lift(None if r.is_zero() else r, self.level))

    def poly(self, coeffs) -> TowerElement:
        return self.ratfunc(RatFunc.poly(fmpq_poly([as_fmpq(c) for c in coeffs])))

    def gen(self, name_or_index) -> TowerElement:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        data = (None, _lift(RatFunc.const(1), i))
        return TowerElement(self, _lift(data, self.level - i - 1))

    def radicand(self, name_or_index) -> TowerElement:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return TowerElement(self.prefix(i), self.gens[i].radicand).lift(self)

    def from_terms(self, terms: dict[int, RatFunc]) -> TowerElement:
        return TowerElement(self, _unflatten({m: r for m, r in terms.items() if not r.is_zero()}, self.level))

    # derivative support ---------------------------------------------------
    def dlog(self):
        if self._dlog is None:
            dl = []
            for i, g in enumerate(self.gens):
                p = g.radicand
                dp = _deriv(p, i, self._rad, dl)
                dl.append(_mul(dp, _inv(_scale(p, fmpq(2), i), i, self._rad), i, self._rad))
            self._dlog = dl
        return self._dlog

    # extensions ---------------------------------------------------------
    def fresh_name(self, stem: str = "r") -> str:
        used = set(self.names) | {self.base}
        i = 1
        while f"{stem}{i}" in used:
            i += 1
        return f"{stem}{i}"

    def extend(self, radicand, name: str, branch: int = 1, check: bool = True) -> Tower:
        """Adjoin ``name = sqrt(radicand)``.

        An exactly repeated radicand returns this tower unchanged; a radicand
        that is already a square here is rejected (the result would not be a field).
        """
        rad = self.coerce(radicand)
        if rad.is_zero():
            raise TowerError("cannot adjoin the square root of zero")
        if name == self.base or name in self.names:
            raise TowerError(f"generator name {name!r} already in use")
        for i, g in enumerate(self.gens):
            if rad == self.radicand(i):
                return self
        if check and rad.sqrt() is not None:
            raise TowerError(f"radicand is already a square in {self!r}")
        return Tower(self.base, self.gens + (Generator(name, rad.data, branch),))

    def adjoin_sqrt(self, x, name: str | None = None) -> tuple[Tower, TowerElement]:
        """Square root of ``x``, adjoining a simplified generator only if needed.

        The new radicand is reduced to a small representative of the square
        class of ``x`` (norm descent, squarefree part, products with existing
        generators), so repeated roots reuse what is already in the tower.
        """
        x = self.coerce(x)
        r = x.sqrt()
        if r is not None:
            return self, r
        rad = _square_class_rep(x)
        tower = self.extend(rad, name or self.fresh_name(), check=False)
        ratio = x.lift(tower) / rad.lift(tower)
        cof = ratio.sqrt()
        if cof is None:
            raise AssertionError("square-class reduction failed")
        return tower, cof * tower.gen(tower.level - 1)

    def with_branches(self, signs: dict[str, int]) -> Tower:
        gens = tuple(Generator(g.name, g.radicand, signs.get(g.name, g.branch)) for g in self.gens)
        return Tower(self.base, gens)

    def coerce(self, x) -> TowerElement:
        if isinstance(x, TowerElement):
            return x.lift(self)
        if isinstance(x, (int, Fraction, fmpq)):
            return self.const(x)
        raise TypeError(f"cannot coerce {x!r} into a tower element")

    def common(self, other: Tower) -> Tower:
        if self.is_prefix_of(other):
            return other
        if other.is_prefix_of(self):
            return self
        raise TowerError(f"incompatible towers {self!r} and {other!r}")


def _square_class_rep(x: TowerElement) -> TowerElement:
    tower = x.tower
    k = tower.level
    data = x.data
    rad = tower._rad
    # descend while the element is (up to squares) in a lower level
    while k > 0:
        a, b = data
        if b is None:
            data = a
            k -= 1
            continue
        n = _sqrt(_norm(data, k, rad), k - 1, rad)
        if n is _NOT_FOUND:
            break
        w = _add(a, n, k - 1)
        if w is None:
            w = _sub(a, n, k - 1)
        data = _scale(w, fmpq(1, 2), k - 1)
        k -= 1
    if k > 0:
        return TowerElement(tower.prefix(k), data).lift(tower)
    # level 0: squarefree part, then try products with level-0 radicands
    base_gens = [i for i, g in enumerate(tower.gens)
                 if isinstance(g.radicand, RatFunc)]
    best = None
    for r in range(len(base_gens) + 1):
        for subset in combinations(base_gens, r):
            val = data
            for i in subset:
                val = val * tower.gens[i].radicand
            c, factors = val.squarefree_class()
            p = fmpq_poly([c])
            for f in factors:
                p = p * f
            key = (p.degree(), len(factors), abs(int(c.p)).bit_length())
            if best is None or key < best[0]:
                best = (key, p)
    return tower.ratfunc(RatFunc.poly(best[1]))


class TowerElement:
    """An element of a square-root tower in canonical form."""

    __slots__ = ("tower", "data")

    def __init__(self, tower: Tower, data):
        self.tower = tower
        self.data = data

    # coercion -----------------------------------------------------------
    def lift(self, tower: Tower) -> TowerElement:
        if tower is self.tower or tower == self.tower:
            return self if tower is self.tower else TowerElement(tower, self.data)
        if not self.tower.is_prefix_of(tower):
            raise TowerError(f"{self.tower!r} does not embed into {tower!r}")
        return TowerElement(tower, _lift(self.data, tower.level - self.tower.level))

    def _pair(self, other):
        if isinstance(other, TowerElement):
            if other.tower is self.tower:
                return self.tower, self.data, other.data
            t = self.tower.common(other.tower)
            return t, self.lift(t).data, other.lift(t).data
        if isinstance(other, (int, Fraction, fmpq)):
            return self.tower, self.data, self.tower.const(other).data
        return None

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, x, y = p
        return TowerElement(t, _add(x, y, t.level))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, _neg(self.data, self.tower.level))

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, x, y = p
        return TowerElement(t, _sub(x, y, t.level))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            return TowerElement(self.tower, _scale(self.data, as_fmpq(other), self.tower.level))
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, x, y = p
        if x is y:
            return TowerElement(t, _sqr(x, t.level, t._rad))
        return TowerElement(t, _mul(x, y, t.level, t._rad))

    __rmul__ = __mul__

    def inverse(self) -> TowerElement:
        t = self.tower
        return TowerElement(t, _inv(self.data, t.level, t._rad))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            c = as_fmpq(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, x, y = p
        return TowerElement(t, _mul(x, _inv(y, t.level, t._rad), t.level, t._rad))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        t = self.tower
        result = t.one().data
        base = self.data
        k = t.level
        while n:
            if n & 1:
                result = _mul(result, base, k, t._rad)
            n >>= 1
            if n:
                base = _sqr(base, k, t._rad)
        return TowerElement(t, result)

    def __eq__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        _, x, y = p
        return x == y

    def __hash__(self):
        return hash(str(self))

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.data is None

    def is_const(self) -> bool:
        terms = self.terms()
        return not terms or (set(terms) == {0} and terms[0].is_const())

    def const_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        from .ratfunc import fmpq_to_fraction
        return fmpq_to_fraction(self.terms()[0].const_value())

    def in_base(self) -> bool:
        return set(self.terms()) <= {0}

    def base_part(self) -> RatFunc:
        return self.terms().get(0, ZERO)

    def terms(self) -> dict[int, RatFunc]:
        return _flatten(self.data, self.tower.level)

    def size(self) -> int:
        return _size(self.data, self.tower.level)

    def uses(self) -> set[int]:
        """Indices of generators that occur in some term."""
        used = set()
        for m in self.terms():
            for i in range(self.tower.level):
                if m >> i & 1:
                    used.add(i)
        return used

    # calculus and conjugation --------------------------------------------
    def diff(self) -> TowerElement:
        """d/ds, with du_i/ds = p_i'/(2 u_i)."""
        t = self.tower
        return TowerElement(t, _deriv(self.data, t.level, t._rad, t.dlog()))

    def sqrt(self) -> TowerElement | None:
        t = self.tower
        r = _sqrt(self.data, t.level, t._rad)
        if r is _NOT_FOUND:
            return None
        return TowerElement(t, r)

    def conjugate(self, name_or_index) -> TowerElement:
        t = self.tower
        j = name_or_index if isinstance(name_or_index, int) else t.index(name_or_index)
        return TowerElement(t, _flip(self.data, t.level, j + 1))

    def norm_to_base(self) -> RatFunc:
        """Product of all 2^k conjugates, an element of Q(s)."""
        t = self.tower
        x = self.data
        if x is None:
            return ZERO
        for k in range(t.level, 0, -1):
            x = _norm(x, k, t._rad)
        return x

    def map_coefficients(self, fn) -> TowerElement:
        return TowerElement(self.tower, _map_leaves(self.data, self.tower.level, fn))

    # text ---------------------------------------------------------------
    def __str__(self):
        from .textform import element_to_text
        return element_to_text(self)

    def __repr__(self):
        return f"TowerElement({self})"


def base_tower(base: str = "s") -> Tower:
    return Tower(base, ())


__all__ = [
    "Generator", "Tower", "TowerElement", "TowerError", "base_tower",
    "ONE", "ZERO", "squarefree_rational",
]
