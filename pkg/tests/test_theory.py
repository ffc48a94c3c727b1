from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simulroot.numeric import Real, make_real
from simulroot.theory import (
    UndefinedSeparationError,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    error_bound,
    max_separation,
    min_separation,
)
from oracles import frac_cosh, frac_sin, frac_sinh

R = make_real


def as_fraction(x: Real) -> Fraction:
    return Fraction(x.dec)


def reals(*values):
    return [R(v) for v in values]


def test_min_separation_fixture_roots():
    assert min_separation(reals("-2", "1", "3")) == 2
    assert min_separation(reals("0", "1")) == 1
    assert min_separation(reals("1", "2", "2.5")) == R("0.5")
    assert max_separation(reals("1", "2", "2.5")) == R("1.5")


def test_min_separation_needs_two_roots():
    with pytest.raises(UndefinedSeparationError):
        min_separation(reals("1"))


def test_theorem1_fixture_constants_pass():
    report = check_theorem1(6, (2, 1, 3), R("2"), R("0.05"), R("0.5"))
    assert report.passed
    # exact decimal arithmetic: the alpha = 1 row reads 0.0125 < 2.66
    row = report.per_index[1]
    assert row.mult == 1
    assert row.checks[0].lhs == R("0.0125")
    assert row.checks[0].rhs == R("2.66")
    assert report.params.d == 2


def test_theorem1_boundary_c_equals_half_d_fails():
    report = check_theorem1(6, (2, 1, 3), R("2"), R("1"), R("0.5"))
    assert not report.passed
    names = {c.name: c.passed for c in report.global_checks}
    assert names["d - 2c > 0"] is False


def test_theorem1_q_boundary_fails():
    report = check_theorem1(6, (2, 1, 3), R("2"), R("0.05"), R("1"))
    assert not report.passed
    assert report.global_checks[0].passed is False


@settings(max_examples=30, deadline=None)
@given(
    st.decimals(min_value="1", max_value="4", places=2),
    st.lists(st.integers(min_value=1, max_value=4), min_size=2, max_size=4),
    st.integers(min_value=1, max_value=8),
)
def test_theorem1_passing_is_monotone_in_c(d_dec, mults, halvings):
    d = R(str(d_dec))
    n = sum(mults)
    c = d / R(str(40 * n))
    q = R("0.5")
    if not check_theorem1(n, mults, d, c, q).passed:
        return
    smaller = c / (2**halvings)
    assert check_theorem1(n, mults, d, smaller, q).passed


def frac_theorem2_sides(n, mult, c, a):
    rest = 2 * n - mult
    lhs = c * c * (
        mult * mult
        + Fraction(1, 4) * rest * rest / (a * a)
        + (c / 4) * Fraction(mult, 4) * rest
        + mult * (Fraction(rest, 2) / (a * a) + c / (6 * a) * rest)
    )
    root = mult * (1 - c * c / 8) + c / (2 * a) * rest
    return lhs, root * root


def test_theorem2_fixture_constants():
    report = check_theorem2(
        3, (3, 2, 1), R("0.5"), R("1.5"), R("0.05"), R("0.5"), R("1")
    )
    for check in report.global_checks:
        assert check.passed, check.name
    # A = min(|sin(0.5)|, |sin(0.2)|) = sin(0.2)
    a_oracle = frac_sin(Fraction(1, 5))
    assert abs(as_fraction(report.params.a_const) - a_oracle) < Fraction(1, 10**60)
    c = Fraction(1, 20)
    for row in report.per_index:
        lhs, rhs = frac_theorem2_sides(3, row.mult, c, a_oracle)
        check = row.checks[0]
        assert abs(as_fraction(check.lhs) - lhs) < Fraction(1, 10**55)
        assert abs(as_fraction(check.rhs) - rhs) < Fraction(1, 10**55)
        assert check.passed == (lhs < rhs)
    assert report.passed


def test_theorem2_span_condition_fails():
    report = check_theorem2(
        3, (3, 2, 1), R("0.5"), R("4.3"), R("0.05"), R("0.5"), R("1")
    )
    assert not report.passed
    by_name = {c.name: c for c in report.global_checks}
    assert by_name["max separation < 2 pi - 2 xi"].passed is False
    assert by_name["2c < xi"].passed is True


def test_theorem2_small_c_limit_passes_main_inequality():
    report = check_theorem2(
        3, (3, 2, 1), R("0.5"), R("1.5"), R("0.000001"), R("0.5"), R("1")
    )
    for row in report.per_index:
        assert row.passed


def test_theorem3_small_c_global_clause():
    report = check_theorem3(2, (2, 2), R("5"), R("0.1"), R("0.5"))
    clause = {c.name: c for c in report.global_checks}["c |sinh c| + cosh c < 12"]
    oracle = Fraction(1, 10) * frac_sinh(Fraction(1, 10)) + frac_cosh(Fraction(1, 10))
    assert clause.passed
    assert abs(as_fraction(clause.lhs) - oracle) < Fraction(1, 10**60)
    assert str(clause.lhs).startswith("1.01502")


def test_theorem3_degenerate_separation_reports_reason():
    report = check_theorem3(2, (2, 2), R("0.1"), R("0.05"), R("0.5"))
    assert not report.passed
    assert report.per_index[0].checks[0].reason is not None
    assert "S" in report.per_index[0].checks[0].reason


def test_theorem3_fixture_constants_full_report():
    report = check_theorem3(2, (2, 2), R("5"), R("0.05"), R("0.5"))
    assert report.passed
    s_oracle = frac_sinh(Fraction(49, 20))  # sinh((5 - 0.1)/2)
    assert abs(as_fraction(report.params.s_const) - s_oracle) < Fraction(1, 10**58)
    c = Fraction(1, 20)
    sinh_c = frac_sinh(c)
    cosh_c = frac_cosh(c)
    for row in report.per_index:
        mult = row.mult
        lhs = (
            mult * mult
            + 2 / s_oracle * (mult * c + sinh_c / s_oracle**3) * sinh_c
            + 4 / s_oracle**2 * cosh_c
        )
        rhs = mult + s_oracle / cosh_c
        check = row.checks[0]
        assert abs(as_fraction(check.lhs) - lhs) < Fraction(1, 10**55)
        assert abs(as_fraction(check.rhs) - rhs) < Fraction(1, 10**55)


def test_error_bound_first_step():
    assert error_bound(R("0.3"), R("0.25"), 0) == R("0.075")


def test_error_bound_two_steps_exact():
    assert error_bound(R("1"), R("0.5"), 2) == R("0.001953125")


def test_error_bound_approaches_c_near_one():
    c = R("2")
    bound = error_bound(c, R("0.9999999"), 0)
    assert bound < c
    assert c - bound < R("0.000001")


def test_error_bound_validates_inputs():
    with pytest.raises(ValueError):
        error_bound(R("0"), R("0.5"), 1)
    with pytest.raises(ValueError):
        error_bound(R("1"), R("1"), 1)
    with pytest.raises(ValueError):
        error_bound(R("1"), R("0.5"), -1)


def test_error_bound_monotone_and_underflows_to_zero():
    c, q = R("0.3"), R("0.5")
    previous = None
    for k in range(6):
        bound = error_bound(c, q, k)
        if previous is not None:
            assert bound < previous
        previous = bound
    assert error_bound(c, q, 50).is_zero()
