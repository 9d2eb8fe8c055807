import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from kellerid.algebra import MPoly
from kellerid.keller import CurveF
from kellerid.polymatrix import PolyMatrix

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rationals = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)


def monomials(nvars=4, max_exp=3):
    exps = [st.integers(0, max_exp) if i < nvars else st.just(0) for i in range(4)]
    return st.tuples(*exps)


def polys(nvars=4, max_exp=3, max_terms=5):
    return st.dictionaries(monomials(nvars, max_exp), small_rationals, max_size=max_terms).map(MPoly)


def univariate(var="x", max_deg=4):
    return st.lists(small_rationals, max_size=max_deg + 1).map(lambda cs: MPoly.univariate(cs, var))


def matrices(max_n=6, max_exp=3):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        entries = polys(nvars=2, max_exp=max_exp, max_terms=3)
        return PolyMatrix([[draw(entries) for _ in range(n)] for _ in range(n)])

    return build()


@st.composite
def curves(draw, ms=(2, 3, 4), lo=-3, hi=3, bounded=True):
    m = draw(st.sampled_from(ms))
    rows = [draw(st.lists(st.integers(lo, hi), min_size=i + 1, max_size=i + 1)) for i in range(1, m + 1)]
    return CurveF.from_coefficients(rows)


# -- acceptance summary ---------------------------------------------------------------

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    detail = dict(report.user_properties).get("detail", "")
    _criteria.append((marker[0], marker[1], report.outcome, detail))


import pytest  # noqa: E402


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = m.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, detail in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  [{detail}]")
