import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simulroot.numeric import Real, make_real, pi, ten_power
from simulroot.polys import AlgebraicCoeffPoly, FactoredPoly, Family
from simulroot.solver import (
    CollisionError,
    EstimateVector,
    InsufficientDataError,
    MultiplicityProfile,
    SolveConfig,
    StopReason,
    correction_sum,
    empirical_order,
    newton_baseline_step,
    pre_floor_errors,
    solve,
    step,
    wrap_to_standard_period,
)
from oracles import (
    algebraic_chebyshev_step,
    algebraic_newton_step,
    frac_cot,
)

R = make_real


def as_fraction(x: Real) -> Fraction:
    return Fraction(x.dec)


def factored(family, roots, mults):
    return FactoredPoly(Family(family), tuple(R(r) for r in roots), tuple(mults))


def estimates(*values):
    return EstimateVector(tuple(R(v) for v in values))


EXAMPLE_1 = factored("algebraic", ["-2", "1", "3"], [2, 1, 3])
EXAMPLE_2 = factored("trigonometric", ["1", "2", "2.5"], [3, 2, 1])
EXAMPLE_3 = factored("exponential", ["-2", "3"], [2, 2])

PROFILE_1 = MultiplicityProfile.for_family(Family.ALGEBRAIC, (2, 1, 3))
PROFILE_2 = MultiplicityProfile.for_family(Family.TRIGONOMETRIC, (3, 2, 1))
PROFILE_3 = MultiplicityProfile.for_family(Family.EXPONENTIAL, (2, 2))

# First iteration of each worked example, as published (verified digits).
TABLE_ROW_1 = {
    1: ("-2.074075484632669380", "1.025215703994304140", "3.060848242666424480"),
    2: ("1.024086327992702930", "2.102113721613658320", "2.719836743505084910"),
    3: ("-1.936759338912996590", "3.015817214722672100"),
}


def test_correction_sum_single_root_is_zero():
    profile = MultiplicityProfile.for_family(Family.ALGEBRAIC, (3,))
    vec = EstimateVector((R("1.5"),))
    assert correction_sum(Family.ALGEBRAIC, vec, profile, 0).is_zero()


def test_correction_sum_algebraic_fixture():
    vec = estimates("-3", "0.1", "4")
    total = correction_sum(Family.ALGEBRAIC, vec, PROFILE_1, 0)
    # 1/(-3.1) + 3/(-7) as an exact rational
    expected = Fraction(-163, 217)
    assert str(total).startswith("-0.7511520737")
    assert abs(as_fraction(total) - expected) < Fraction(1, 10**62)


def test_correction_sum_trigonometric_fixture():
    vec = estimates("0.2", "1.7", "3")
    total = correction_sum(Family.TRIGONOMETRIC, vec, PROFILE_2, 0)
    expected = (2 * frac_cot(Fraction(-3, 4)) + frac_cot(Fraction(-7, 5))) / 2
    assert abs(as_fraction(total) - expected) < Fraction(1, 10**60)


def test_correction_sum_collision_and_bounds():
    vec = EstimateVector((R("1"), R("2")))
    profile = MultiplicityProfile.for_family(Family.ALGEBRAIC, (1, 1))
    with pytest.raises(CollisionError):
        correction_sum(Family.ALGEBRAIC, EstimateVector((R("2"), R("2"))), profile, 0)
    with pytest.raises(IndexError):
        correction_sum(Family.ALGEBRAIC, vec, profile, 2)


def test_estimate_vector_rejects_duplicates():
    with pytest.raises(CollisionError) as excinfo:
        EstimateVector((R("1"), R("1.0")))
    assert excinfo.value.indices == (0, 1)


@pytest.mark.parametrize(
    "poly,profile,init,table",
    [
        (EXAMPLE_1, PROFILE_1, ("-3", "0.1", "4"), TABLE_ROW_1[1]),
        (EXAMPLE_2, PROFILE_2, ("0.2", "1.7", "3"), TABLE_ROW_1[2]),
        (EXAMPLE_3, PROFILE_3, ("-1.5", "3.4"), TABLE_ROW_1[3]),
    ],
)
def test_step_matches_published_first_iteration(poly, profile, init, table):
    nxt = step(poly.family, poly, estimates(*init), profile)
    assert nxt.k == 1
    for computed, printed in zip(nxt.x, table):
        assert abs(computed - R(printed)) <= ten_power(-17)


def test_step_single_root_algebraic_is_exact_in_one_iteration():
    poly = factored("algebraic", ["1.25"], [5])
    profile = MultiplicityProfile.for_family(Family.ALGEBRAIC, (5,))
    nxt = step(Family.ALGEBRAIC, poly, EstimateVector((R("7"),)), profile)
    assert abs(nxt.x[0] - R("1.25")) <= ten_power(-58)


def test_step_family_mismatch_rejected():
    with pytest.raises(ValueError):
        step(Family.TRIGONOMETRIC, EXAMPLE_1, estimates("-3", "0.1", "4"), PROFILE_1)


def test_newton_baseline_single_root_exact():
    poly = factored("algebraic", ["2"], [4])
    profile = MultiplicityProfile.for_family(Family.ALGEBRAIC, (4,))
    nxt = newton_baseline_step(Family.ALGEBRAIC, poly, EstimateVector((R("3.7"),)), profile)
    assert abs(nxt.x[0] - R("2")) <= ten_power(-58)


def test_newton_baseline_matches_rational_oracle():
    roots = [Fraction(-2), Fraction(1), Fraction(3)]
    expected = algebraic_newton_step(roots, [2, 1, 3], [Fraction(-3), Fraction(1, 10), Fraction(4)])
    nxt = newton_baseline_step(Family.ALGEBRAIC, EXAMPLE_1, estimates("-3", "0.1", "4"), PROFILE_1)
    for computed, exact in zip(nxt.x, expected):
        assert abs(as_fraction(computed) - exact) < Fraction(1, 10**60)


def test_chebyshev_step_matches_rational_oracle():
    roots = [Fraction(-2), Fraction(1), Fraction(3)]
    expected = algebraic_chebyshev_step(
        roots, [2, 1, 3], [Fraction(-3), Fraction(1, 10), Fraction(4)]
    )
    nxt = step(Family.ALGEBRAIC, EXAMPLE_1, estimates("-3", "0.1", "4"), PROFILE_1)
    for computed, exact in zip(nxt.x, expected):
        assert abs(as_fraction(computed) - exact) < Fraction(1, 10**58)


@pytest.mark.parametrize(
    "poly,profile,roots",
    [
        (EXAMPLE_1, PROFILE_1, ("-2", "1", "3")),
        (EXAMPLE_2, PROFILE_2, ("1", "2", "2.5")),
        (EXAMPLE_3, PROFILE_3, ("-2", "3")),
    ],
)
def test_exact_roots_are_a_fixed_point(poly, profile, roots):
    vec = estimates(*roots)
    for advance in (step, newton_baseline_step):
        nxt = advance(poly.family, poly, vec, profile)
        assert all(a == b for a, b in zip(nxt.x, vec.x))


def test_baseline_estimates_already_exact_stay_put():
    nxt = newton_baseline_step(Family.EXPONENTIAL, EXAMPLE_3, estimates("-2", "3"), PROFILE_3)
    assert nxt.x == estimates("-2", "3").x


@pytest.mark.parametrize(
    "poly,profile,init,iters,roots,",
    [
        (EXAMPLE_1, PROFILE_1, ("-3", "0.1", "4"), 4, ("-2", "1", "3")),
        (EXAMPLE_2, PROFILE_2, ("0.2", "1.7", "3"), 5, ("1", "2", "2.5")),
        (EXAMPLE_3, PROFILE_3, ("-1.5", "3.4"), 4, ("-2", "3")),
    ],
)
def test_solve_reaches_published_accuracy(poly, profile, init, iters, roots):
    report = solve(poly, profile, estimates(*init), SolveConfig(max_iters=iters))
    final = report.trace.final()
    for x, r in zip(final.x, roots):
        assert abs(x - R(r)) <= ten_power(-18)
    assert len(report.trace.snapshots) == iters + 1


def test_solve_converges_on_tolerance():
    poly = factored("algebraic", ["1"], [1])
    profile = MultiplicityProfile.for_family(Family.ALGEBRAIC, (1,))
    report = solve(poly, profile, EstimateVector((R("5"),)), SolveConfig(max_iters=10))
    assert report.converged
    assert report.stop_reason is StopReason.TOLERANCE
    assert abs(report.trace.final().x[0] - 1) <= ten_power(-58)


def test_solve_reports_step_failure():
    poly = AlgebraicCoeffPoly((R("0"), R("-1")))  # x^2 - 1, stationary point at 0
    profile = MultiplicityProfile.for_family(Family.ALGEBRAIC, (1, 1))
    report = solve(poly, profile, estimates("0", "5"), SolveConfig(max_iters=5))
    assert not report.converged
    assert report.stop_reason is StopReason.STEP_FAILURE
    assert "index 0" in report.failure


def test_solve_tracks_errors_when_roots_supplied():
    report = solve(
        EXAMPLE_1,
        PROFILE_1,
        estimates("-3", "0.1", "4"),
        SolveConfig(max_iters=4),
        true_roots=tuple(R(r) for r in ("-2", "1", "3")),
    )
    errors = report.trace.errors
    assert errors is not None and len(errors) == 5
    assert errors[0] == (R("1"), R("0.9"), R("1"))
    assert max(report.trace.max_errors()[1:]) < R("0.1")


def test_solve_validates_profile_against_polynomial():
    with pytest.raises(ValueError):
        solve(
            EXAMPLE_1,
            MultiplicityProfile.for_family(Family.ALGEBRAIC, (2, 1, 2)),
            estimates("-3", "0.1", "4"),
        )


@settings(max_examples=25, deadline=None)
@given(st.permutations([0, 1, 2]))
def test_step_is_equivariant_under_index_permutation(perm):
    vec = ("-3", "0.1", "4")
    base = step(Family.ALGEBRAIC, EXAMPLE_1, estimates(*vec), PROFILE_1)
    permuted_profile = MultiplicityProfile.for_family(
        Family.ALGEBRAIC, tuple(PROFILE_1.mults[p] for p in perm)
    )
    permuted = step(
        Family.ALGEBRAIC,
        EXAMPLE_1,
        estimates(*(vec[p] for p in perm)),
        permuted_profile,
    )
    for slot, p in enumerate(perm):
        assert abs(permuted.x[slot] - base.x[p]) <= ten_power(-60)


def test_empirical_order_synthetic_cubic_sequence():
    # e_k = c * q^(3^k) with c = q = 1/2: exactly representable powers of two
    errors = [R("1") / R(str(2 ** (1 + 3**k))) for k in range(3)]
    order = empirical_order(errors)
    assert abs(order - 3) <= ten_power(-40)


def test_empirical_order_published_error_triple():
    errors = [R("7.40754846e-2"), R("1.04622198e-4"), R("2.5695e-14")]
    order = empirical_order(errors)
    expected = math.log(2.5695e-14 / 1.04622198e-4) / math.log(1.04622198e-4 / 7.40754846e-2)
    assert abs(order - R(f"{expected:.12f}")) < R("1e-9")
    assert str(order).startswith("3.37")


def test_empirical_order_geometric_sequence_is_linear():
    errors = [R("1") / (R("2") ** k) for k in range(1, 6)]
    assert abs(empirical_order(errors) - 1) <= ten_power(-40)


def test_empirical_order_insufficient_data():
    with pytest.raises(InsufficientDataError):
        empirical_order([R("1"), R("0.5")])
    with pytest.raises(InsufficientDataError):
        empirical_order([R("1"), R("0.5"), R("0.5")])
    with pytest.raises(InsufficientDataError):
        empirical_order([R("1"), R("0"), R("0")])


def test_pre_floor_errors_strips_floor_and_stalls():
    errors = [R("1"), R("1e-3"), R("1e-9"), R("1e-27"), R("1e-60"), R("0")]
    assert pre_floor_errors(errors, 64) == [R("1"), R("1e-3"), R("1e-9"), R("1e-27")]
    stalled = [R("1"), R("0.5"), R("0.5"), R("0.25")]
    assert pre_floor_errors(stalled, 64) == [R("1"), R("0.5")]


def test_wrap_to_standard_period():
    three_half_pi = 3 * pi(64) / 2
    wrapped = wrap_to_standard_period(three_half_pi)
    assert abs(wrapped + pi(64) / 2) <= ten_power(-60)
    assert wrap_to_standard_period(R("1")) == 1
    at_pi = wrap_to_standard_period(pi(64))
    assert abs(at_pi + pi(64)) <= ten_power(-60)
