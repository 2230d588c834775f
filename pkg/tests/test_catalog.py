import importlib

import pytest

from pvifold.algebra import parse_expr
from pvifold.catalog import (CatalogError, catalog_ids, check_cascade, check_hyperelliptic_form,
                             complement_forms_check, entry_from_source, entry_from_text, entry_to_text,
                             hitchin_round_trip, load_entry, verify_entry)
from pvifold.catalog.entries import fixture_text
from pvifold.catalog.sources import CASCADES, source
from pvifold.pvi import ParamSolution, ThetaTuple, theta_equivalent

branching_mod = importlib.import_module("pvifold.catalog.branching")

IDS = catalog_ids()


def test_catalog_ids():
    assert len(IDS) == 19 and len(set(IDS)) == 19
    assert {"hitchin-dihedral", "boalch-39", "boalch-52"} <= set(IDS)
    with pytest.raises(CatalogError):
        load_entry("boalch-99")


@pytest.mark.parametrize("entry_id", IDS)
def test_fixture_text_round_trip(entry_id):
    text = fixture_text(entry_id)
    entry = entry_from_text(text)
    assert entry_to_text(entry) == text


@pytest.mark.parametrize("entry_id", IDS)
def test_fixtures_regenerate_from_sources(entry_id):
    assert entry_to_text(entry_from_source(source(entry_id))) == fixture_text(entry_id)


@pytest.mark.parametrize("entry_id", IDS)
def test_entry_verifies(entry_id):
    report = verify_entry(load_entry(entry_id))
    assert report.passed, report.to_text()
    assert report.label == entry_id


@pytest.mark.parametrize("entry_id, wrong", [
    ("boalch-39", ("1/3", "1/3", "4/5", "3/5")),
    ("boalch-31", ("1/5", "1/5", "1/5", "2/5")),
    ("hitchin-dihedral", ("1/2", "1/2", "1/2", "1/3")),
])
def test_wrong_theta_fails(entry_id, wrong):
    sol = load_entry(entry_id).solution
    bad = ParamSolution(sol.t, sol.y, ThetaTuple.of(wrong), "wrong-theta")
    assert not verify_entry(bad).passed


def test_equivalent_theta_passes():
    sol = load_entry("hitchin-dihedral").solution
    flipped = ParamSolution(sol.t, sol.y, ThetaTuple.of("-1/2", "1/2", "-1/2", "3/2"))
    assert theta_equivalent(flipped.theta, sol.theta)
    assert verify_entry(flipped).passed


def test_degree_two_curve_entries():
    assert load_entry("boalch-39").genus == 1
    assert load_entry("boalch-47").tower.level == 2


@pytest.mark.parametrize("cascade", CASCADES, ids=lambda c: f"{c.source}->{c.target}")
def test_cascade(cascade):
    res = check_cascade(cascade)
    assert res.theta_ok, res.to_text()
    assert res.matched and res.mode == "exact", res.to_text()


@pytest.mark.parametrize("entry_id, signs", [("boalch-47-q", (1, 1)), ("boalch-48-q", (1, -1))])
def test_hyperelliptic_forms(entry_id, signs):
    assert check_hyperelliptic_form(entry_id) == (True, signs)


@pytest.mark.parametrize("entry_id", ["boalch-50", "boalch-51"])
def test_long_t_forms_are_complements(entry_id):
    assert complement_forms_check(entry_id)


def test_base_relation_between_31_and_44():
    base = load_entry("boalch-31").tower
    t = base.extend(parse_expr("s^4-18*s^2+1", base), "r")
    s, r = t.s, t.gen("r")
    q = (s * s - 1 + r) / 4
    assert s * s * (q - 2) == q * (2 * q + 1)


def test_hitchin_round_trip():
    res = hitchin_round_trip(samples=10, dps=60)
    assert res.theta_ok and res.relation_exact
    assert res.max_gap < 1e-30 and res.passed


def test_branching_of_dihedral_map():
    # t = s^3 (s+2)/(2s+1): t-1 = (s-1)(s+1)^3/(2s+1)
    t = load_entry("hitchin-dihedral").solution.t
    pat = branching_mod.branching(t, "hitchin", dps=40)
    assert pat.degree == 4 and pat.sums_ok()
    assert pat.fibers == {"0": (3, 1), "1": (3, 1), "inf": (3, 1)}
    assert pat.rational_divisors("0") == [(3, 1), (1, 1)]


def test_branching_needs_precision():
    t = load_entry("hitchin-dihedral").solution.t
    with pytest.raises(branching_mod.BranchingError):
        branching_mod.branching(t, dps=30)
    with pytest.raises(branching_mod.BranchingError):
        branching_mod.branching(t * 0 + 5)


def test_branching_of_genus_zero_entry():
    pat = branching_mod.branching(load_entry("boalch-31").solution.t, "31", dps=40, orbits=False)
    assert pat.degree == 10 and pat.sums_ok()


def test_type_52_generators_satisfy_plane_curve():
    tower = load_entry("boalch-52").tower
    p, r = tower.gen("p"), tower.gen("r")
    F = (9 * p**6 * r**2 + 18 * p**4 * r**4 + 9 * p**2 * r**6 + 4 * p**6 + 26 * p**4 * r**2 + 26 * p**2 * r**4
         + 4 * r**6 + 8 * p**4 + 57 * p**2 * r**2 + 8 * r**4 + 20 * p**2 + 20 * r**2 + 16)
    assert F.is_zero()
    assert not (F + 8 * p**4 - 8 * r**4).is_zero()
