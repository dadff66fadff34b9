from fractions import Fraction

import numpy as np
import pytest

from src.core.exceptions import PreconditionError, PrimeError, RetriesExhaustedError
from src.expr import classify, parse_expression
from src.randomized import RetryPolicy, RngSpec, evading_family, las_vegas, prob_two_var, union_bound
from src.randomized.evading import block_values, evading_feasible
from src.randomized.two_var import expression_values

LOOP_EXPR = "a(x)*a(x) + a(x)*b(y) + (a(x)+x)*(b(y)+y)"


@pytest.fixture
def loop_params():
    return classify(parse_expression(LOOP_EXPR)).params


def test_union_bound():
    assert union_bound(5) == Fraction(5 * 120 * 32, 4 ** 5)
    assert union_bound(5) > 1
    assert union_bound(23) < 1


def test_zero_is_avoided_everywhere(loop_params):
    found = prob_two_var(loop_params, 31, RngSpec(11), RetryPolicy())
    values = expression_values(loop_params, found.alpha, found.beta, 31)
    assert values.shape == (31, 31)
    assert (values != 0).all()


def test_same_seed_same_maps(loop_params):
    first = prob_two_var(loop_params, 23, RngSpec(5), RetryPolicy())
    second = prob_two_var(loop_params, 23, RngSpec(5), RetryPolicy())
    assert np.array_equal(first.alpha, second.alpha)
    assert np.array_equal(first.beta, second.beta)


def test_preconditions(loop_params):
    with pytest.raises(PrimeError):
        prob_two_var(loop_params, 5, RngSpec(0), RetryPolicy())
    with pytest.raises(PreconditionError):
        prob_two_var({**loop_params, 'n1': 0}, 31, RngSpec(0), RetryPolicy())


def test_las_vegas_gives_up():
    def attempt(gen):
        return None, {'draw': int(gen.integers(0, 10))}

    with pytest.raises(RetriesExhaustedError):
        las_vegas(attempt, RngSpec(0), RetryPolicy(3), 'never succeeds')


def test_las_vegas_counts_retries():
    calls = []

    def attempt(gen):
        calls.append(1)
        return ('done', None) if len(calls) == 3 else (None, {})

    assert las_vegas(attempt, RngSpec(0), RetryPolicy(5), 'third time') == ('done', 2)


def test_evading_family_avoids_every_target():
    coeffs = {'c1': 1, 'c2': -1, 'lam1': 2, 'mu1': 0, 'lam2': 1, 'mu2': 3}
    targets = [0, 4, 4, 9]
    family = evading_family(targets, coeffs, 31, RngSpec(2), RetryPolicy())
    assert family.beta.shape == (4, 31)
    assert np.array_equal(family.beta[1], family.beta[2])
    for s, f in enumerate(targets):
        assert ((block_values(coeffs, family.alpha, family.beta[s], 31) + f) % 31 != 0).all()


def test_evading_feasibility_is_exact():
    assert not evading_feasible(1, 5)
    assert evading_feasible(13, 11)
