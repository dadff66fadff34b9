from fractions import Fraction

from src.assemble import estimate, plan


def test_two_linear_summands_case_count():
    predicted = estimate(plan(0, 2, 0.5), mode='relaxed', base_primes=(5, 7, 11))
    assert predicted.stage_one_primes[0][1] == (5,)
    stage_two = predicted.stages[1]
    assert stage_two.case_count == 147_840
    assert stage_two.coordinates == 443_520
    assert stage_two.linear
    assert predicted.feasible
    assert predicted.total_coordinates == 3 + 443_520


def test_strict_stage_one_needs_larger_primes():
    predicted = estimate(plan(0, 2, 0.5), mode='strict', base_primes=(5, 7, 11))
    assert not predicted.feasible
    assert predicted.first_failure().stage == 1


def test_strict_quadratic_is_infeasible():
    predicted = estimate(plan(1, 0, 0.5), mode='strict')
    failure = predicted.first_failure()
    assert failure is not None
    assert failure.stage == 2
    assert predicted.to_dict()['feasible'] is False


def test_fitted_schedule_makes_linear_family_strict_feasible():
    predicted = estimate(plan(0, 2, 0.5), mode='strict', base_primes=(5, 7, 11), schedule='fitted')
    assert predicted.feasible
    assert predicted.plan.schedule == (Fraction(167, 385), Fraction(1, 2))
    stage_two = predicted.stages[1]
    assert stage_two.coordinates == 443_520
    # every singleton block at density ≤ (1/2 − 167/385) / 443520
    assert stage_two.min_prime >= 6_696_282


def test_fitted_schedule_is_ignored_without_room():
    predicted = estimate(plan(0, 2, 0.5), mode='strict', base_primes=(3, 5, 7), schedule='fitted')
    assert predicted.plan.schedule == (Fraction(1, 4), Fraction(1, 2))
    assert predicted.first_failure().stage == 1
