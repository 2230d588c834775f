from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from conftest import elements, two_step_curve
from pvifold.algebra import ParseError, Tower, TowerError, element_to_text, parse_expr, parse_tower
from pvifold.algebra.numeric import BranchError, PoleError, eval_numeric, generator_values
from pvifold.algebra.textform import parse_canonical, parse_rational, tower_to_text
from pvifold.pvi import derivative_along

S = Tower("s")
CURVE = two_step_curve()


def test_generator_squares_to_radicand():
    t = S.extend(parse_expr("s*(8*s^2-11*s+8)", S), "u")
    u = t.gen("u")
    assert u * u == parse_expr("s*(8*s^2-11*s+8)", t)


def test_inverse_and_cancellation():
    t = S.extend(S.s + 1, "u")
    u = t.gen("u")
    x = t.s * u + 3
    assert (x - x).is_zero()
    assert (1 / (u - 1)) * (u - 1) == t.one()


def test_extend_rules():
    tau = S.extend(S.s, "tau")
    assert tau.extend(tau.s, "tau2") is tau  # repeated radicand reuses the generator
    with pytest.raises(TowerError):
        S.extend(S.zero(), "z")
    with pytest.raises(TowerError):
        tau.extend(tau.s + 1, "tau")
    with pytest.raises(TowerError):
        S.extend(S.s * S.s, "r")  # already a square
    r = S.extend(parse_expr("s^4-18*s^2+1", S), "r")
    g = r.gen("r")
    assert (g * g - parse_expr("s^4-18*s^2+1", r)).is_zero()


def test_adjoin_sqrt_reuses_square_class():
    t = S.extend(S.s, "tau")
    t2, root = t.adjoin_sqrt(4 * t.s ** 3)
    assert t2 is t and root * root == 4 * t.s ** 3
    t3, root = t.adjoin_sqrt(t.s * (t.s + 1) ** 2 * 9)
    assert t3 is t


def test_derivatives():
    assert (S.s ** 2).diff() == 2 * S.s
    t = S.extend(S.s, "u")
    u = t.gen("u")
    assert u.diff() == 1 / (2 * u)
    t = S.extend(parse_expr("s*(8*s^2-11*s+8)", S), "u")
    u = t.gen("u")
    assert u.diff() == parse_expr("24*s^2-22*s+8", t) / (2 * u)
    assert derivative_along(S.s ** 2, S.s) == 2 * S.s
    eta = S.extend(S.s, "eta").gen("eta")
    assert derivative_along(eta, eta.tower.s) == 1 / (2 * eta)


@given(elements(CURVE), elements(CURVE), elements(CURVE))
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(elements(CURVE, nonzero=True))
def test_division_inverts(x):
    assert (x / x) == CURVE.one()


@given(elements(CURVE), elements(CURVE))
def test_leibniz_rule(x, y):
    assert (x * y).diff() == x.diff() * y + x * y.diff()


def test_generator_relations_differentiate():
    for i in range(CURVE.level):
        g = CURVE.gen(i)
        assert (g * g).diff() == CURVE.radicand(i).lift(CURVE).diff()


@given(elements(CURVE))
def test_canonical_text_round_trip(x):
    text = element_to_text(x)
    again = parse_canonical(text, CURVE)
    assert again == x
    assert element_to_text(again) == text


def test_tower_text_round_trip():
    lines = tower_to_text(CURVE)
    assert parse_tower(lines, "s") == CURVE


def test_decimal_input_rejected():
    with pytest.raises(ParseError):
        parse_rational("0.5")
    with pytest.raises(ParseError):
        parse_expr("0.5*s", S)
    assert parse_rational("-4/6") == Fraction(-2, 3)


def test_eval_numeric_examples():
    assert eval_numeric(S.s ** 2, 3) == 9
    tau = S.extend(S.s, "tau")
    assert eval_numeric(tau.gen("tau"), 4, branches={"tau": 2}) == 2
    with pytest.raises(BranchError):
        eval_numeric(tau.gen("tau"), 4, branches={"tau": 3})
    c39 = S.extend(parse_expr("3*(s+3)*(4*s^2-s+1)", S), "u")
    val = eval_numeric(c39.gen("u"), 1, dps=30)
    with mp.workdps(30):
        assert abs(val - mp.sqrt(48)) < mp.mpf(10) ** -28
        assert abs(val ** 2 - 48) < mp.mpf(10) ** -27
    with pytest.raises(PoleError):
        eval_numeric(1 / (S.s - 2), 2)


@given(elements(CURVE), elements(CURVE), st.fractions(min_value=Fraction(1, 7), max_value=6, max_denominator=50))
def test_evaluation_is_multiplicative(x, y, point):
    dps = 60
    try:
        with mp.workdps(dps):
            gens = generator_values(CURVE, mp.mpf(point.numerator) / point.denominator)
            ex = eval_numeric(x, point, dps=dps, gens=gens)
            ey = eval_numeric(y, point, dps=dps, gens=gens)
            exy = eval_numeric(x * y, point, dps=dps, gens=gens)
            assert abs(exy - ex * ey) <= mp.mpf(10) ** (1 - dps) * max(1, abs(ex * ey)) * 10 ** 6
    except PoleError:
        pass


@given(elements(CURVE), elements(CURVE), st.fractions(min_value=Fraction(1, 7), max_value=6, max_denominator=50))
def test_derivative_along_matches_finite_differences(y, t, point):
    if t.diff().is_zero():
        return
    dps = 60
    h = mp.mpf(10) ** -20
    try:
        with mp.workdps(dps):
            s0 = mp.mpf(point.numerator) / point.denominator
            exact = eval_numeric(derivative_along(y, t), s0, dps=dps)
            num = eval_numeric(y, s0 + h, dps=dps) - eval_numeric(y, s0 - h, dps=dps)
            den = eval_numeric(t, s0 + h, dps=dps) - eval_numeric(t, s0 - h, dps=dps)
            if abs(den) < mp.mpf(10) ** -30:
                return
            assert abs(exact - num / den) <= mp.mpf(10) ** (-(dps // 3)) * max(1, abs(exact))
    except PoleError:
        pass


def test_derivative_along_on_dihedral_curve():
    t = parse_expr("s^3*(s+2)/(2*s+1)", S)
    y = -S.s
    dps = 40
    with mp.workdps(dps):
        s0 = mp.mpf(1) / 3
        exact = eval_numeric(derivative_along(y, t), s0, dps=dps)
        h = mp.mpf(10) ** -15
        fd = (-(s0 + h) + (s0 - h)) / (eval_numeric(t, s0 + h, dps=dps) - eval_numeric(t, s0 - h, dps=dps))
        assert abs(exact - fd) < mp.mpf(10) ** -25
