import numpy as np
import pytest

from src.construct import ExactValueSet, SizeBoundOnly
from src.construct.handler_factory import construct_expression
from src.core.exceptions import BudgetExceededError, PrimeError
from src.expr import parse_expression
from src.verify import image_exhaustive, image_sampled, image_values, min_image_experiment
from src.verify.experiment import image_size

BASIC = "a(x)*b(y) + a(x) + x + b(y) + y"
AFFINE = "a(x)*b(y) + (a(x)+x)*(b(y)+y)"


@pytest.fixture
def basic():
    expr = parse_expression(BASIC)
    return expr, construct_expression(expr, [5, 7])


def test_footprint_matches_full_enumeration(basic):
    expr, construction = basic
    reduced = image_exhaustive(expr, construction.maps, keep_codes=True)
    full = image_exhaustive(expr, construction.maps, reduce=False, keep_codes=True)
    assert full.domain_size == 35 ** 2
    assert reduced.domain_size <= full.domain_size
    assert np.array_equal(reduced.codes, full.codes)


def test_chunking_and_workers_agree(basic):
    expr, construction = basic
    whole = image_exhaustive(expr, construction.maps, keep_codes=True, reduce=False)
    chunked = image_exhaustive(expr, construction.maps, keep_codes=True, reduce=False, chunk_size=100, workers=2)
    assert np.array_equal(whole.codes, chunked.codes)


def test_image_values_are_residue_rows(basic):
    expr, construction = basic
    values = image_values(expr, construction.maps)
    assert values.shape[1] == 2
    assert construction.certificate.contains(values).all()


def test_budget_is_enforced(basic):
    expr, construction = basic
    with pytest.raises(BudgetExceededError):
        image_exhaustive(expr, construction.maps, budget=10, reduce=False)


def test_sampled_mode_finds_violations():
    expr = parse_expression(AFFINE)
    construction = construct_expression(expr, [11])
    constant = int(construction.measurements['constant'][0])
    wrong = ExactValueSet.from_integers([11], [constant + 1])
    report = image_sampled(expr, construction.maps, wrong, samples=50, rng=np.random.default_rng(0))
    assert report.violations == 50
    assert not report.passed
    assert report.witness['value'] == [constant]

    clean = image_sampled(expr, construction.maps, SizeBoundOnly(11), samples=50, rng=np.random.default_rng(0))
    assert clean.passed
    assert 'note' in clean.to_dict()


def test_exhaustive_violation_carries_witness(basic):
    expr, construction = basic
    report = image_exhaustive(expr, construction.maps, ExactValueSet.from_integers([5, 7], [1]))
    assert report.violations > 0
    assert not report.passed
    assert set(report.witness) == {'point', 'value'}


def test_minimum_image_on_z6():
    result = min_image_experiment(2, 3)
    assert 2 <= result.minimum <= 6
    assert image_size(result.alpha, result.beta, 6) == result.minimum
    assert result.to_dict()['lower_bound_min_pq'] == 2


def test_experiment_limits():
    with pytest.raises(PrimeError):
        min_image_experiment(3, 3)
    with pytest.raises(BudgetExceededError):
        min_image_experiment(3, 5)


@pytest.mark.slow
@pytest.mark.parametrize("text,primes", [
    ("a(x)*b(y) + (a(x)+x)*(b(y)+y) + 2*x", [11]),
    ("a(x)*a(x) + a(x) + x", [11, 13]),
    ("a(x)*b(y) + (a(x)+x)*(b(y)+y) + a(x)*c(z) + c(z) + z", [7, 11]),
    ("(a(x)+x)*b(y) + (b(y)+y)*c(z) + (c(z)+z)*a(x)", [31]),
])
def test_footprint_oracle_sweep(text, primes):
    expr = parse_expression(text)
    construction = construct_expression(expr, primes)
    reduced = image_exhaustive(expr, construction.maps, construction.certificate, keep_codes=True)
    full = image_exhaustive(expr, construction.maps, construction.certificate, reduce=False, keep_codes=True)
    assert np.array_equal(reduced.codes, full.codes)
    assert full.passed
