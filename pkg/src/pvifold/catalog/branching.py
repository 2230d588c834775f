"""Ramification of t over 0, 1 and infinity on a parametrized curve.

The curve is the function field of a tower over Q(s).  Ramification indices
over a value c are the cycle lengths of the local monodromy: the points over
``c + eps * exp(i phi)`` are followed once around the circle and the induced
permutation is read off.  Since an algebraic Painleve t-map is a Belyi map,
any radius below one encloses no other critical value.

To see points with s = infinity the base is moved first, ``s = alpha + 1/z``
for an integer ``alpha`` that is not special, and the tower is pulled back.
Points over c are found as roots in z of the characteristic polynomial of t
(exact coefficients in Q(z)) and the sheets with t = c + eps are kept.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import flint
import mpmath as mp
from flint import fmpq, fmpq_poly

from ..algebra.morphism import pullback
from ..algebra.numeric import PoleError, _eval_data, pole_guard
from ..algebra.ratfunc import RatFunc
from ..algebra.tower import Tower, TowerElement

FIBERS = ("0", "1", "inf")


MIN_DPS = 40


class BranchingError(ValueError):
    pass


@dataclass
class BranchPoint:
    multiplicity: int
    s: object  # approximate complex s-coordinate, or "inf"
    factor: int  # index of the irreducible factor of the exact fiber polynomial
    orbit: int = -1  # Galois orbit index within the fiber


@dataclass
class BranchPattern:
    degree: int
    fibers: dict = field(default_factory=dict)  # fiber -> sorted multiplicities
    points: dict = field(default_factory=dict)  # fiber -> list[BranchPoint]
    label: str = ""

    def sums_ok(self) -> bool:
        return all(sum(m) == self.degree for m in self.fibers.values())

    def rational_divisors(self, fiber: str) -> list[tuple[int, int]]:
        """(multiplicity, number of geometric points) for each irreducible divisor over Q."""
        groups = Counter((p.orbit, p.factor, p.multiplicity) for p in self.points[fiber])
        return sorted(((e, n) for (_, _, e), n in groups.items()), reverse=True)

    def to_text(self) -> str:
        cols = " | ".join(f"{f}: {','.join(map(str, m))}" for f, m in self.fibers.items())
        return f"{self.label} degree={self.degree} {cols}"


# ---------------------------------------------------------------------------
# exact preparation


def _is_constant_gen(tower: Tower, i: int) -> bool:
    rad = tower.gens[i].radicand
    return isinstance(rad, RatFunc) and rad.is_const()


def _choose_alpha(t: TowerElement, candidates=(7, -9, 11, 13, -17, 19, 23, -29, 31)) -> int:
    tower = t.tower
    nonconst = [i for i in range(tower.level) if not _is_constant_gen(tower, i)]
    with mp.workdps(30):
        for a in candidates:
            ok = True
            try:
                for signs in product((1, -1), repeat=len(nonconst)):
                    vals = _sheet_values(tower, mp.mpf(a), dict(zip(nonconst, signs)))
                    if vals is None:
                        ok = False
                        break
                    tv = _eval_data(t.data, tower.level, vals, mp.mpf(a))
                    if min(abs(tv), abs(tv - 1)) < mp.mpf(10) ** -8 or abs(tv) > mp.mpf(10) ** 12:
                        ok = False
                        break
            except ZeroDivisionError:
                ok = False
            except ArithmeticError:
                ok = False
            if ok:
                return a
    raise BranchingError("no admissible base point for the coordinate change")


def _sheet_values(tower: Tower, point, signs: dict):
    vals = []
    for i, g in enumerate(tower.gens):
        r = _eval_data(g.radicand, i, vals, point)
        if abs(r) < mp.mpf(10) ** (-(mp.mp.dps // 2)):
            return None
        vals.append(signs.get(i, 1) * mp.sqrt(r))
    return vals


def _moved(t: TowerElement, alpha: int) -> TowerElement:
    """t in the coordinate z with s = alpha + 1/z."""
    z_tower = Tower("z")
    z = z_tower.s
    tmap = pullback(t.tower, alpha + 1 / z)
    return tmap(t)


def char_poly(x: TowerElement) -> list[fmpq_poly]:
    """Coefficients P_m(z) of D(z) * prod_j (w - x_j) = sum_m P_m(z) w^m.

    Found by interpolating exact norms of ``x - w`` at integer ``w``.
    """
    n = 2 ** x.tower.level
    nodes = list(range(n + 1))
    vals = [x.norm_to_base() if w == 0 else (x - w).norm_to_base() for w in nodes]
    # prod_j (x_j - w) has leading coefficient (-1)^n; divided differences give Newton form
    coef = list(vals)
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]).scale(fmpq(1, j))
    # expand Newton form into monomials in w
    mono = [RatFunc.const(0) for _ in range(n + 1)]
    basis = [RatFunc.const(1)]  # coefficients of prod_{i<j} (w - i)
    for j in range(n + 1):
        for m, b in enumerate(basis):
            mono[m] = mono[m] + coef[j] * b
        nxt = [RatFunc.const(0) for _ in range(len(basis) + 1)]
        for m, b in enumerate(basis):
            nxt[m + 1] = nxt[m + 1] + b
            nxt[m] = nxt[m] - b.scale(fmpq(j))
        basis = nxt
    den = fmpq_poly([1])
    for c in mono:
        if not c.is_zero():
            den = den * c.den / den.gcd(c.den)
    return [c.num * den / c.den if not c.is_zero() else fmpq_poly([]) for c in mono]


def squarefree_in_w(polys: list[fmpq_poly]) -> list[fmpq_poly]:
    """Reduced form of sum_m P_m(z) w^m: repeated and w-free factors removed.

    When the element lies in a proper subfield its characteristic polynomial
    is a power of the minimal one; root finding in z needs the reduced form.
    """
    ctx = flint.fmpq_mpoly_ctx.get(("z", "w"))
    terms = {}
    for m, p in enumerate(polys):
        for k, c in enumerate(p.coeffs()):
            if c != 0:
                terms[(k, m)] = c
    big = flint.fmpq_mpoly(terms, ctx)
    _, facs = big.factor_squarefree()
    red = flint.fmpq_mpoly(1, ctx)
    for f, _ in facs:
        if f.degrees()[1] > 0:
            red = red * f
    out = [dict() for _ in range(red.degrees()[1] + 1)]
    for (k, m), c in red.to_dict().items():
        out[m][k] = c
    res = []
    for d in out:
        deg = max(d) if d else -1
        res.append(fmpq_poly([d.get(k, 0) for k in range(deg + 1)]))
    return res


# ---------------------------------------------------------------------------
# numeric tracking


def _to_acb(c) -> flint.acb:
    return flint.acb(flint.arb(mp.nstr(c.real, mp.mp.dps)), flint.arb(mp.nstr(c.imag, mp.mp.dps)))


def _from_acb(c: flint.acb) -> mp.mpc:
    return mp.mpc(mp.mpf(c.real.mid().str(mp.mp.dps, radius=False)),
                  mp.mpf(c.imag.mid().str(mp.mp.dps, radius=False)))


def _coeffs_at(polys: list[fmpq_poly], w) -> list:
    deg = max(p.degree() for p in polys)
    coeffs = [mp.mpc(0)] * (deg + 1)
    wp = mp.mpc(1)
    for p in polys:
        for k, c in enumerate(p.coeffs()):
            coeffs[k] += wp * (mp.mpf(int(c.p)) / int(c.q))
        wp *= w
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _isolate(polys: list[fmpq_poly], w) -> list:
    """Complex roots via FLINT; clustered roots may need more than the working precision."""
    dps = mp.mp.dps
    old = flint.ctx.dps
    try:
        for scale in (1, 2, 4):
            with mp.workdps(scale * dps):
                flint.ctx.dps = scale * dps
                poly = flint.acb_poly([_to_acb(c) for c in _coeffs_at(polys, w)])
                try:
                    roots = poly.roots(tol=mp.mpf(10) ** (-(dps // 2)), maxprec=16 * flint.ctx.prec)
                except ValueError:
                    continue
                return [_from_acb(r) for r in roots]
    finally:
        flint.ctx.dps = old
    raise BranchingError("root isolation failed; raise the working precision")


def _z_roots(polys: list[fmpq_poly], w) -> list:
    """Roots in z of sum_m P_m(z) w^m, isolated by FLINT and polished by Newton."""
    coeffs = _coeffs_at(polys, w)
    rough = [+r for r in _isolate(polys, w)]
    rev = coeffs[::-1]
    drev = [c * (len(rev) - 1 - i) for i, c in enumerate(rev[:-1])]
    out = []
    for z in rough:
        for _ in range(4):
            f = mp.polyval(rev, z)
            df = mp.polyval(drev, z)
            if df == 0:
                break
            z = z - f / df
        out.append(z)
    return out


class _Tracker:
    def __init__(self, x: TowerElement, polys, dps: int):
        self.x = x
        self.tower = x.tower
        self.polys = polys
        self.dps = dps
        self.nonconst = [i for i in range(self.tower.level) if not _is_constant_gen(self.tower, i)]

    def points(self, w) -> list[tuple]:
        tol = mp.mpf(10) ** (-(self.dps // 3))
        out = []
        for z in _z_roots(self.polys, w):
            for signs in product((1, -1), repeat=len(self.nonconst)):
                vals = []
                for i, g in enumerate(self.tower.gens):
                    r = _eval_data(g.radicand, i, vals, z)
                    vals.append(dict(zip(self.nonconst, signs)).get(i, 1) * mp.sqrt(r))
                try:
                    xv = _eval_data(self.x.data, self.tower.level, vals, z)
                except (ZeroDivisionError, PoleError):
                    continue
                if abs(xv - w) < tol * max(1, abs(w)):
                    out.append((z,) + tuple(vals[i] for i in self.nonconst))
        return _dedupe(out)


def _dist(p, q):
    return max(abs(a - b) for a, b in zip(p, q))


def _dedupe(pts):
    out = []
    for p in pts:
        if all(_dist(p, q) > mp.mpf(10) ** (-(mp.mp.dps // 3)) for q in out):
            out.append(p)
    return out


def _match(old, new):
    """Permutation old[i] -> new[perm[i]] by unambiguous nearest neighbours, else None."""
    if len(old) != len(new):
        return None
    perm = []
    for p in old:
        d = sorted((_dist(p, q), j) for j, q in enumerate(new))
        if len(d) > 1 and d[0][0] > d[1][0] / 4:
            return None
        perm.append(d[0][1])
    if len(set(perm)) != len(perm):
        return None
    return perm


def _loop_permutation(tracker: _Tracker, center, eps, steps: int = 32, max_depth: int = 12):
    def w_at(phi):
        return center + eps * mp.expj(phi)

    start = tracker.points(w_at(0))
    n = len(start)
    if n == 0:
        raise BranchingError("no points over the sample value")
    perm = list(range(n))
    cur = start

    def advance(pts, a, b, depth):
        nxt = tracker.points(w_at(b))
        m = _match(pts, nxt)
        if m is not None:
            return nxt, m
        if depth >= max_depth:
            raise BranchingError("failure to separate points while tracking the loop")
        mid = (a + b) / 2
        p1, m1 = advance(pts, a, mid, depth + 1)
        p2, m2 = advance(p1, mid, b, depth + 1)
        return p2, [m2[j] for j in m1]

    two_pi = 2 * mp.pi
    for k in range(steps):
        a, b = two_pi * k / steps, two_pi * (k + 1) / steps
        if k == steps - 1:
            nxt = start
            m = _match(cur, nxt)
            if m is None:
                mid = (a + b) / 2
                p1, m1 = advance(cur, a, mid, 1)
                m2 = _match(p1, start)
                if m2 is None:
                    raise BranchingError("failure to close the loop")
                m = [m2[j] for j in m1]
            perm = [m[j] for j in perm]
            cur = nxt
            break
        cur, m = advance(cur, a, b, 0)
        perm = [m[j] for j in perm]
    return start, perm


def _cycles(perm) -> list[list[int]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def _fiber_factors(polys, c) -> list[tuple[int, list]]:
    """Irreducible factors of the exact fiber polynomial sum_m P_m c^m with their roots."""
    total = fmpq_poly([])
    cp = fmpq(1)
    for p in polys:
        total += p * cp
        cp *= c
    _, facs = total.factor()
    out = []
    for i, (f, _) in enumerate(facs):
        roots = [_from_acb(r) for r in flint.acb_poly(f).roots(tol=mp.mpf(10) ** (-(mp.mp.dps // 2)), maxprec=16 * mp.mp.prec)] if f.degree() > 0 else []
        out.append((i, roots, f))
    return out


def _integer_relation(h, deg: int):
    """Integer polynomial of degree ``deg`` vanishing at the complex number ``h``, or None."""
    powers = [h ** k for k in range(deg + 1)]
    vec = [p.real + mp.pi * p.imag for p in powers]
    try:
        rel = mp.pslq(vec, maxcoeff=10 ** 30, maxsteps=20000)
    except (ValueError, ZeroDivisionError):
        return None
    if rel is None or rel[-1] == 0:
        return None
    if abs(sum(c * p for c, p in zip(rel, powers))) > mp.mpf(10) ** (-(mp.mp.dps // 2)):
        return None
    return rel


def _galois_orbits(points: list[tuple[int, int, object]]) -> list[list[int]]:
    """Group (multiplicity, factor, h) triples into Galois orbits.

    Points of one orbit share multiplicity and fiber factor; inside such a
    class the orbit of a point is the set where the minimal polynomial of its
    h-value vanishes.  Falls back to the whole class when no relation is found.
    """
    remaining = list(range(len(points)))
    orbits = []
    tol = mp.mpf(10) ** (-(mp.mp.dps // 3))
    while remaining:
        i = remaining[0]
        e, f, h = points[i]
        cls = [j for j in remaining if points[j][0] == e and points[j][1] == f]
        found = None
        for deg in range(1, len(cls) + 1):
            rel = _integer_relation(h, deg)
            if rel is None:
                continue
            members = [j for j in cls
                       if abs(mp.polyval(rel[::-1], points[j][2])) < tol * max(1, abs(points[j][2])) ** deg]
            if len(members) == deg:
                found = members
                break
        found = found or cls
        orbits.append(found)
        remaining = [j for j in remaining if j not in found]
    return orbits


def _polish(f: fmpq_poly, z):
    coeffs = [mp.mpf(int(c.p)) / int(c.q) for c in f.coeffs()][::-1]
    dcoeffs = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
    for _ in range(6):
        df = mp.polyval(dcoeffs, z)
        if df == 0:
            break
        z = z - mp.polyval(coeffs, z) / df
    return z


def _limit_point(tracker: _Tracker, cyc_pts, factors):
    """Exact-precision coordinates of the point a cycle shrinks to."""
    cz = sum(p[0] for p in cyc_pts) / len(cyc_pts)
    dist, idx, z0, f = min(((abs(cz - r), i, r, fac) for i, roots, fac in factors for r in roots),
                           key=lambda item: item[0], default=(0, -1, cz, None))
    if f is not None:
        z0 = _polish(f, z0)
    cg = [sum(p[k] for p in cyc_pts) / len(cyc_pts) for k in range(1, len(cyc_pts[0]))]
    best = None
    tower = tracker.tower
    for signs in product((1, -1), repeat=len(tracker.nonconst)):
        sign_of = dict(zip(tracker.nonconst, signs))
        vals = []
        for i, g in enumerate(tower.gens):
            try:
                r = _eval_data(g.radicand, i, vals, z0)
            except PoleError:
                r = mp.mpc(0)
            vals.append(sign_of.get(i, 1) * mp.sqrt(r))
        coords = [vals[i] for i in tracker.nonconst]
        d = max([abs(a - b) for a, b in zip(coords, cg)], default=0)
        if best is None or d < best[0]:
            best = (d, coords)
    return idx, z0, best[1]


def branching(t: TowerElement, label: str = "", eps=mp.mpf(1) / 10 ** 6, dps: int = 40,
              steps: int = 32, orbits: bool = True, fibers=FIBERS) -> BranchPattern:
    """Ramification multiplicities of ``t`` over 0, 1, infinity.

    ``fibers`` may list other rational values (as strings ``"p/q"``) or
    ``"inf"``; the loop radius ``eps`` must stay below the distance to the
    nearest other critical value.  With ``orbits`` the points of each fiber
    are also grouped into Galois orbits (irreducible divisors over Q) via
    integer relations.
    """
    if t.is_const():
        raise BranchingError("t is constant")
    if dps < MIN_DPS:
        raise BranchingError(f"branching needs at least {MIN_DPS} digits, got {dps}")
    alpha = _choose_alpha(t)
    tz = _moved(t, alpha)
    inv = 1 / tz
    pattern = BranchPattern(0, label=label)
    with mp.workdps(dps), pole_guard(False):
        old = flint.ctx.dps
        flint.ctx.dps = dps
        try:
            for fiber in fibers:
                x, c = (inv, Fraction(0)) if fiber == "inf" else (tz, Fraction(fiber))
                polys = squarefree_in_w(char_poly(x))
                tracker = _Tracker(x, polys, dps)
                start, perm = _loop_permutation(tracker, mp.mpf(c.numerator) / c.denominator, eps, steps)
                factors = _fiber_factors(polys, fmpq(c.numerator, c.denominator))
                pts, keys = [], []
                for cyc in _cycles(perm):
                    idx, z0, gens = _limit_point(tracker, [start[j] for j in cyc], factors)
                    s_val = "inf" if abs(z0) < mp.mpf(10) ** (-(dps // 2)) else alpha + 1 / z0
                    pts.append(BranchPoint(len(cyc), s_val, idx))
                    keys.append((len(cyc), idx, z0 + sum((k + 2) * g for k, g in enumerate(gens))))
                if orbits:
                    for n, orbit in enumerate(_galois_orbits(keys)):
                        for j in orbit:
                            pts[j].orbit = n
                pattern.points[fiber] = pts
                pattern.fibers[fiber] = tuple(sorted((p.multiplicity for p in pts), reverse=True))
                pattern.degree = max(pattern.degree, len(start))
        finally:
            flint.ctx.dps = old
    return pattern


__all__ = ["BranchPattern", "BranchPoint", "BranchingError", "branching", "char_poly", "FIBERS"]
