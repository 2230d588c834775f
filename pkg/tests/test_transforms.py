from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import elements
from pvifold.algebra import ParseError, Tower, parse_expr
from pvifold.catalog import load_entry
from pvifold.catalog.verification import TILDE_NU, chain_context, type39_chain
from pvifold.pvi import ParamSolution, ThetaTuple, residual, theta_equivalent, verify
from pvifold.transforms import (FL_ROWS, GENERATING_ROWS, FixedSolutionError, NuTuple, Reachability, ShapeError,
                                TransformError, apply_pipeline, compose_rows, fl_apply, fl_commutes, fl_row,
                                okamoto, okamoto_compose_identity_check, okamoto_inverse_nu, parse_pipeline,
                                param_shift, relabel_nu, schlesinger_reachable)
from pvifold.transforms.contiguous import (Y4Chain, contiguous_matches_fold, contiguous_y1y2, deta_dtau_identity,
                                           inverse_quadratic_check, companion_y2)
from pvifold.transforms.fractional import fl_map
from pvifold.transforms.quadratic import alt_notation_crosscheck, fold_Y0_half_display, kitaev_A_half
from pvifold.transforms.shifts import state_from_context

S = Tower("s")
F = Fraction
GENERIC = S.extend(S.poly([1, 1, 0, 1]), "u")


@pytest.fixture(scope="module")
def chain():
    return type39_chain()


@pytest.fixture(scope="module")
def ctx():
    return chain_context()[1]


# -- fractional-linear rows ----------------------------------------------------


def test_row_table_is_a_group():
    assert len(FL_ROWS) == 24
    assert len({row.perm for row in FL_ROWS.values()}) == 24
    for a, b in product(FL_ROWS, repeat=2):
        compose_rows(a, b)  # closed under composition
    for name in FL_ROWS:
        assert any(compose_rows(name, other).name == "id" for other in FL_ROWS)


def test_generating_rows_generate():
    seen = {"id"}
    frontier = ["id"]
    while frontier:
        nxt = []
        for name in frontier:
            for g in GENERATING_ROWS:
                c = compose_rows(name, g).name
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    assert seen == set(FL_ROWS)


def test_sample_row_formulas():
    y = parse_expr("(s^2+3)/(s-5)", S)
    t = S.s
    assert fl_map(y, t, "id") == (y, t)
    assert fl_map(y, t, "p2") == (t * (y - 1) / (y - t), t)
    assert fl_map(y, t, "s2") == (1 / y, 1 / t)
    assert fl_map(y, t, "s1") == (1 - y, 1 - t)
    th = ThetaTuple.of("1/3", "1/5", "2/7", "4/5")
    assert fl_row("s1").relabel(th) == ThetaTuple.of("1/5", "1/3", "2/7", "4/5")
    assert fl_row("p1").relabel(th) == ThetaTuple.of("1/5", "2/7", "1/5", "2/3")


@settings(max_examples=40)
@given(st.sampled_from(sorted(FL_ROWS)), st.sampled_from(sorted(FL_ROWS)), elements(GENERIC, nonzero=True))
def test_row_substitutions_compose(first, second, y):
    t = GENERIC.s
    if any(v.is_zero() for v in (y - 1, y - t)):
        return
    y1, t1 = fl_map(y, t, first)
    direct = fl_map(y, t, compose_rows(first, second))
    assert fl_map(y1, t1, second) == direct


@pytest.mark.parametrize("row", sorted(FL_ROWS))
def test_rows_map_solutions_to_solutions(row):
    sol = load_entry("boalch-39").solution
    assert residual(fl_apply(sol, row)).is_zero()


# -- Okamoto ---------------------------------------------------------------------


def test_zero_sum_nu_is_identity():
    sol = load_entry("boalch-31").solution
    nu = NuTuple.of("1/5", "-1/5", "-1/5", "1/5")
    assert okamoto(sol, nu).y == sol.y


def test_okamoto_of_39_matches_fixture():
    src = load_entry("boalch-39").solution
    out = okamoto(src, TILDE_NU)
    fixture = load_entry("boalch-39-tilde")
    assert out.t == fixture.solution.t and out.y == fixture.solution.y
    assert out.theta == ThetaTuple.of("0", "0", "-7/15", "17/15")
    assert theta_equivalent(out.theta, fixture.theta)
    assert residual(out).is_zero()


def test_okamoto_requires_sign_choice():
    sol = load_entry("boalch-31").solution
    with pytest.raises(TransformError):
        okamoto(sol, NuTuple.of("1/3", "1/5", "1/5", "1/5"))


def test_fixed_solution_reported():
    fixed = ParamSolution(S.s, S.one() * 2, ThetaTuple.of(0, 0, 1, 1))
    with pytest.raises(FixedSolutionError):
        okamoto(fixed, NuTuple.of(0, 0, -1, 3), check=False)


@pytest.mark.parametrize("entry, nu", [
    ("hitchin-dihedral", ("1/2", "1/2", "1/2", "1/2")),
    ("boalch-39", ("-1/3", "-1/3", "-4/5", "4/5")),
    ("boalch-31", ("1/5", "-1/5", "1/5", "9/5")),
    ("boalch-41", ("1/3", "1/3", "-1/3", "1/3")),
])
def test_okamoto_identities_on_entries(entry, nu):
    sol = load_entry(entry).solution
    nu = NuTuple.of(nu)
    assert okamoto_compose_identity_check(sol, nu)
    out = okamoto(sol, nu)
    assert residual(out).is_zero()
    assert okamoto(out, okamoto_inverse_nu(nu)).y == sol.y


@settings(max_examples=15)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=9),
       st.fractions(min_value=-3, max_value=3, max_denominator=9))
def test_okamoto_identities_on_sqrt_t_family(A, B):
    theta = ThetaTuple(A / 2, B / 2, B / 2, A / 2 + 1)
    sol = ParamSolution(S.s ** 2, S.s, theta)
    for nu in (NuTuple(*theta), NuTuple(-A / 2, B / 2, B / 2, 1 - A / 2)):
        if sum(nu) == 0:
            continue
        try:
            assert okamoto_compose_identity_check(sol, nu)
        except FixedSolutionError:
            pass


@pytest.mark.parametrize("entry, nu", [
    ("hitchin-dihedral", ("1/2", "1/2", "1/2", "1/2")),
    ("boalch-39", ("-1/3", "-1/3", "-4/5", "4/5")),
    ("boalch-31", ("1/5", "-1/5", "1/5", "9/5")),
])
@pytest.mark.parametrize("row", sorted(FL_ROWS))
def test_fractional_linear_commutes_with_okamoto(entry, nu, row):
    assert fl_commutes(load_entry(entry).solution, NuTuple.of(nu), row)


def test_relabel_nu_uses_shifted_last_slot():
    nu = NuTuple.of("1/5", "2/5", "3/5", "7/5")
    assert relabel_nu("id", nu) == nu
    assert relabel_nu("p1", nu) == NuTuple.of("2/5", "3/5", "2/5", "6/5")


# -- pipelines ------------------------------------------------------------------


def test_pipeline_parsing():
    steps = parse_pipeline("okamoto[-1/3,-1/3,-4/5,4/5], fl[s1]\n# comment\nkitaevB")
    assert [s.kind for s in steps] == ["okamoto", "fl", "kitaevB"]
    assert steps[0].params == (F(-1, 3), F(-1, 3), F(-4, 5), F(4, 5))
    for bad in ("", "okamoto[1,2]", "nosuch", "fl[s1] fl[s2]", "okamoto[0.5,1,1,1]", "kitaevA[x,1]"):
        with pytest.raises(ParseError):
            parse_pipeline(bad)


def test_shape_error_names_step():
    sol = load_entry("boalch-39").solution
    with pytest.raises(ShapeError) as info:
        apply_pipeline(sol, "fl[id],manin")
    msg = str(info.value)
    assert "step 2 (manin)" in msg and "(0,A,B,1)" in msg


def test_unknown_row_is_a_transform_error():
    with pytest.raises(TransformError) as info:
        apply_pipeline(load_entry("boalch-31").solution, "fl[zz]")
    assert "step 1" in str(info.value)


# -- folds, shifts and contiguous relations ---------------------------------------


def test_chain_members_solve(chain):
    for name, sol in chain.items():
        assert residual(sol).is_zero(), name


def test_chain_thetas(chain, ctx):
    assert (ctx.a, ctx.b) == (F(1, 3), F(4, 5))
    assert chain["y0"].theta == ThetaTuple.of("1/3", "-1/5", "4/5", "4/3")
    assert chain["Y0"].theta == ThetaTuple.of("1/3", "1/2", "1/2", "4/5")
    assert chain["Y0~"].theta == ThetaTuple.of("1/3", "1/2", "1/2", "9/5")
    assert chain["Y4_compact"].theta == ThetaTuple.of("1/3", "4/5", "3/2", "1/2")


def test_contiguous_relations(ctx):
    y0 = ParamSolution(ctx.t1, ctx.y0, ThetaTuple(ctx.a, ctx.b - 1, ctx.b, ctx.a + 1))
    y1 = okamoto(y0, NuTuple(-ctx.a, ctx.b - 1, -ctx.b, 1 - ctx.a))
    assert y1.y == ctx.y1
    assert residual(y1).is_zero()
    y2 = companion_y2(ctx)
    assert residual(y2).is_zero()
    assert contiguous_y1y2(y1, y2, y0)
    assert not contiguous_y1y2(y1, y1, y0)
    assert deta_dtau_identity(ctx)
    assert contiguous_matches_fold(ctx)
    assert inverse_quadratic_check(ctx)


def test_half_fold_closed_form_matches_p2_image(ctx):
    out = kitaev_A_half(chain_context()[0])
    assert out.theta == ThetaTuple.of("1/2", "1/3", "-4/5", "1/2")
    assert fold_Y0_half_display(ctx) == out.y
    assert residual(out).is_zero()


def test_y3_y4_match_okamoto_images(ctx):
    chain = Y4Chain(ctx)
    y3, y4 = chain.okamoto_images()
    assert y3 == chain.Y3 and y4 == chain.Y4


def test_shift_round_trips(ctx):
    st0 = state_from_context(ctx)
    for there, back in (("b+1", "b-1"), ("b-1", "b+1"), ("a+1", "a-1"), ("1-b", "1-b")):
        st1 = param_shift(param_shift(st0, there), back)
        assert (st1.a, st1.b) == (st0.a, st0.b)
        assert st1.y0 == st0.y0 and st1.eta == st0.eta, (there, back)


def test_shift_matches_direct_fold():
    base = load_entry("boalch-39").solution
    via_shift = apply_pipeline(base, "conj[kitaevA,2],shift[b+1]")
    direct = apply_pipeline(base, "conj[kitaevA,2],kitaevA_b1")
    assert via_shift.theta == direct.theta == ThetaTuple.of("1/3", "1/2", "1/2", "9/5")
    assert via_shift.y == direct.y
    assert verify(via_shift, "exact").passed


def test_shift_rejects_unknown_kind():
    with pytest.raises(TransformError):
        apply_pipeline(load_entry("boalch-39").solution, "conj[kitaevA,2],shift[b+2]")


def test_alternative_fold_notation():
    assert alt_notation_crosscheck(load_entry("boalch-39").solution)


# -- reachability ---------------------------------------------------------------


def _lattice_oracle(ks):
    """Membership by search over generating moves inside a small box."""
    okamoto_moves = [tuple(2 * (i == j) * sgn for j in range(4)) for i in range(4) for sgn in (1, -1)]
    okamoto_moves += [(1, 1, 1, 1), (-1, -1, -1, -1)]
    fl_moves = [tuple(sgn_i * (k == i) + sgn_j * (k == j) for k in range(4))
                for i in range(4) for j in range(i + 1, 4) for sgn_i in (1, -1) for sgn_j in (1, -1)]

    def reach(moves):
        seen = {(0, 0, 0, 0)}
        frontier = [(0, 0, 0, 0)]
        while frontier:
            nxt = []
            for p in frontier:
                for m in moves:
                    q = tuple(a + b for a, b in zip(p, m))
                    if max(map(abs, q)) <= 3 and q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return seen

    if ks in reach(okamoto_moves):
        return Reachability.OKAMOTO_CHAIN
    if ks in reach(okamoto_moves + fl_moves):
        return Reachability.NEEDS_FRACTIONAL_LINEAR
    return Reachability.UNREACHABLE


def test_reachability_agrees_with_lattice_search():
    for ks in product(range(-2, 3), repeat=4):
        assert schlesinger_reachable(*ks) == _lattice_oracle(ks), ks


@settings(max_examples=1000)
@given(st.tuples(*[st.integers(-10 ** 6, 10 ** 6)] * 4))
def test_reachability_parity_rule(ks):
    res = schlesinger_reachable(*ks)
    parities = {k % 2 for k in ks}
    assert (res == Reachability.OKAMOTO_CHAIN) == (len(parities) == 1)
    assert (res == Reachability.UNREACHABLE) == (sum(ks) % 2 == 1)
    # shifting any entry by 2 keeps the class
    assert schlesinger_reachable(ks[0] + 2, *ks[1:]) == res
