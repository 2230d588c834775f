from fractions import Fraction

import json

import pytest
from hypothesis import given

from conftest import rationals
from pvifold.algebra import Tower, parse_expr
from pvifold.catalog import load_entry
from pvifold.pvi import (DegenerateSolution, ParamSolution, ThetaTuple, residual, residual_numeric,
                         theta_equivalent, theta_to_params, verify)

S = Tower("s")
F = Fraction


def sqrt_t_family(A, B):
    """y = sqrt(t) with t = s^2."""
    return ParamSolution(S.s ** 2, S.s, ThetaTuple(A / 2, B / 2, B / 2, A / 2 + 1), f"sqrt-t({A},{B})")


@pytest.mark.parametrize("theta, params", [
    (("0", "0", "0", "1"), (0, 0, 0, F(1, 2))),
    (("1/2", "1/2", "1/2", "1/2"), (F(1, 8), F(-1, 8), F(1, 8), F(3, 8))),
    (("1/3", "1/3", "4/5", "4/5"), (F(1, 50), F(-1, 18), F(1, 18), F(9, 50))),
])
def test_theta_to_params(theta, params):
    assert theta_to_params(ThetaTuple.of(theta)).as_tuple() == params


def test_theta_equivalence():
    assert theta_equivalent(ThetaTuple.of("0", "0", "7/15", "13/15"), ThetaTuple.of("0", "0", "-7/15", "17/15"))
    assert theta_equivalent(ThetaTuple.of("1/2", "-1/2", "1/2", "3/2"), ThetaTuple.of("1/2", "1/2", "1/2", "1/2"))
    assert not theta_equivalent(ThetaTuple.of("1/2", "1/2", "1/2", "1/2"), ThetaTuple.of("1/2", "1/2", "1/3", "1/2"))


@given(rationals, rationals, rationals, rationals)
def test_equivalent_thetas_share_params(a, b, c, d):
    th = ThetaTuple(a, b, c, d)
    flipped = ThetaTuple(-a, -b, -c, 2 - d)
    assert theta_equivalent(th, flipped)
    assert theta_to_params(th) == theta_to_params(flipped)


@given(rationals, rationals)
def test_sqrt_t_family_solves_exactly(A, B):
    assert residual(sqrt_t_family(A, B)).is_zero()


def test_sqrt_t_family_needs_its_theta():
    sol = sqrt_t_family(F(1, 3), F(1, 5))
    wrong = ParamSolution(sol.t, sol.y, ThetaTuple.of("1/6", "1/10", "1/10", "1/2"))
    assert not residual(wrong).is_zero()
    assert not verify(wrong, "exact").passed


def test_degenerate_inputs_rejected():
    t = S.s
    for y in (S.zero(), S.one(), t):
        with pytest.raises(DegenerateSolution):
            residual(ParamSolution(t, y, ThetaTuple.of(0, 0, 0, 1)))
        assert verify(ParamSolution(t, y, ThetaTuple.of(0, 0, 0, 1))).path == "rejected"
    with pytest.raises(DegenerateSolution):
        residual(ParamSolution(S.one() * 3, S.s, ThetaTuple.of(0, 0, 0, 1)))


def test_dihedral_entry_exact_and_numeric():
    sol = load_entry("hitchin-dihedral").solution
    assert residual(sol).is_zero()
    assert residual_numeric(sol, samples=10, dps=60) < 1e-50
    report = verify(sol, "numeric", samples=10, dps=60)
    assert report.passed and report.path == "numeric"


def test_perturbed_dihedral_fails_numerically():
    sol = load_entry("hitchin-dihedral").solution
    bad = sol.with_y(sol.y + sol.t.tower.s / 10 ** 6)
    assert residual_numeric(bad, samples=10, dps=60) > 1e-10
    assert not verify(bad, "numeric", samples=10, dps=60).passed
    assert not verify(bad, "exact").passed


def test_report_json_is_deterministic():
    sol = load_entry("boalch-31").solution
    first = verify(sol, "numeric", samples=5, dps=40).to_json()
    second = verify(sol, "numeric", samples=5, dps=40).to_json()
    assert first == second
    record = json.loads(first)
    assert record["status"] == "PASS" and "wall_time" not in record


def test_genus_one_entry_on_curve():
    sol = load_entry("boalch-41").solution
    assert verify(sol, "exact").passed
    shifted = ParamSolution(sol.t, sol.y, ThetaTuple.of("1/3", "1/3", "1/3", "2/3"))
    assert not verify(shifted, "exact").passed


def test_residual_accepts_parsed_curve():
    t = S.extend(parse_expr("s", S), "r")
    r = t.gen("r")
    sol = ParamSolution(t.s, r, ThetaTuple.of("1/4", "1/2", "1/2", "5/4"))
    assert residual(sol).is_zero()
