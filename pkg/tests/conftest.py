from hypothesis import HealthCheck, settings, strategies as st

from pvifold.algebra.tower import Tower

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(-6, 6)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=9)


def two_step_curve() -> Tower:
    """u^2 = s^3 + s + 1, v^2 = s^2 + 2."""
    t = Tower("s").extend(Tower("s").poly([1, 1, 0, 1]), "u")
    return t.extend(t.poly([2, 0, 1]), "v")


@st.composite
def elements(draw, tower, nonzero=False):
    """Random sum of generator monomials with small polynomial coefficients, over a small denominator."""
    monomials = [tower.one()]
    for i in range(tower.level):
        g = tower.gen(i)
        monomials += [m * g for m in monomials]
    x = tower.zero()
    for m in monomials:
        x = x + tower.poly(draw(st.lists(small_int, min_size=1, max_size=3))) * m
    den = tower.poly(draw(st.lists(small_int, min_size=0, max_size=2)) + [1])
    x = x / den
    if nonzero and x.is_zero():
        x = x + 1
    return x


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
