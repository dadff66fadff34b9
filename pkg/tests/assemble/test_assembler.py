from fractions import Fraction

import numpy as np
import pytest

from src.assemble import LinearCaseStage, assemble, plan, sample_sum_elements
from src.core.exceptions import InfeasibleError
from src.expr import parse_expression
from src.verify import verify_cover_functional


@pytest.fixture(scope='module')
def single_summand():
    return assemble(plan(0, 1, 0.5), mode='strict', base_primes=(5, 7), seed=1)


@pytest.fixture(scope='module')
def two_summands():
    return assemble(plan(0, 2, 0.5), mode='relaxed', base_primes=(3, 5, 7), seed=1)


def test_single_summand_bound(single_summand):
    assert single_summand.modulus.primes.tolist() == [5, 7]
    assert single_summand.density.bound == Fraction(12, 35)
    assert single_summand.density.meets_target


def test_single_summand_cover_is_exhaustive(single_summand):
    report = verify_cover_functional(single_summand)
    assert report.mode == 'exhaustive'
    assert report.checked == 35
    assert report.passed


def test_single_summand_sum_samples(single_summand):
    report = sample_sum_elements(single_summand, 0, 1, np.random.default_rng(3), 50)
    assert report.passed
    assert report.by_stage == {1: 50}


@pytest.fixture(scope='module')
def two_summands_strict():
    return assemble(plan(0, 2, 0.8), mode='strict', base_primes=(3, 5, 7), seed=1, schedule='fitted')


def test_two_summand_layout(two_summands):
    stage = two_summands.phi.stage_of_size(2)
    assert isinstance(stage, LinearCaseStage)
    assert stage.case_count == 10_920
    assert len(two_summands.modulus) == 3 + 3 * 10_920
    assert two_summands.density.vacuous


def test_two_summand_checks(two_summands):
    rng = np.random.default_rng(5)
    assert verify_cover_functional(two_summands, rng, samples=100).passed
    report = sample_sum_elements(two_summands, 0, 2, rng, 100)
    assert report.passed
    assert report.checked == 100


def test_equal_inputs_route_to_stage_one(two_summands):
    index = two_summands.plan.index_of(parse_expression("a(x) + b(y)"))
    x = two_summands.modulus.random_elements(np.random.default_rng(9), 1)
    value = np.mod(2 * two_summands.element(x, False)[0], two_summands.modulus.primes)
    route = two_summands.route(index, np.vstack([x, x]), value)
    assert route.stage == 1
    assert len(route.path) == 2
    assert route.passed


def test_strict_quadratic_assembly_is_refused():
    with pytest.raises(InfeasibleError):
        assemble(plan(1, 0, 0.5), mode='strict')


def test_strict_fitted_build_meets_epsilon(two_summands_strict):
    assert two_summands_strict.plan.schedule == (Fraction(71, 105), Fraction(4, 5))
    stage = two_summands_strict.phi.stage_of_size(2)
    assert stage.case_count == 10_920
    assert int(stage.primes.min()) >= 793_800
    density = two_summands_strict.density
    assert density.bound <= Fraction(4, 5)
    assert density.meets_target
    assert not density.vacuous


def test_strict_fitted_build_checks(two_summands_strict):
    rng = np.random.default_rng(11)
    assert verify_cover_functional(two_summands_strict, rng, samples=100).passed
    assert sample_sum_elements(two_summands_strict, 0, 2, rng, 100).passed


def test_linear_schedule_cannot_hold_this_build_strict():
    with pytest.raises(InfeasibleError):
        assemble(plan(0, 2, 0.8), mode='strict', base_primes=(3, 5, 7), seed=1)
