from fractions import Fraction

import numpy as np
import pytest

from src.construct.avoidance import choose_alpha_avoiding, polynomial_values
from src.construct.single_var import avoidance_segment, coordinates_needed
from src.construct.small_values import small_value_bound, small_value_search, small_value_table
from src.construct.three_cycle import (
    LinearPart, analytic_glue_set, approximation_report, closed_form_constants,
)
from src.core.exceptions import PreconditionError


def test_polynomial_values_table():
    values = polynomial_values(np.array([[1], [0], [1]]), 5)
    assert values[:, 0].tolist() == [1, 2, 0, 0, 2]


def test_avoidance_takes_first_good_candidate():
    coeffs = np.array([[1], [0], [1]])
    assert choose_alpha_avoiding(5, 2, coeffs, {0}).tolist() == [0]
    assert choose_alpha_avoiding(5, 2, coeffs, {1}).tolist() == [1]


def test_avoidance_degenerate_inputs_get_zero():
    assert choose_alpha_avoiding(5, 2, np.array([[3], [0], [0]]), {3}).tolist() == [0]


def test_avoidance_rejects_large_forbidden_set():
    with pytest.raises(PreconditionError):
        choose_alpha_avoiding(5, 2, np.array([[1], [0], [1]]), {0, 1, 2})


@pytest.mark.parametrize("p,d", [(11, 2), (13, 3), (101, 2)])
def test_avoidance_misses_the_initial_segment(p, d):
    rng = np.random.default_rng(p)
    coeffs = rng.integers(0, p, size=(d + 1, p))
    coeffs[d] = rng.integers(1, p, size=p)
    forbidden = avoidance_segment(p, d)
    alpha = choose_alpha_avoiding(p, d, coeffs, forbidden)
    chosen = polynomial_values(coeffs, p)[alpha, np.arange(p)]
    assert not np.isin(chosen, forbidden).any()


def test_linear_scan_steps_past_the_forbidden_values():
    assert choose_alpha_avoiding(11, 1, np.array([[0], [1]]), {0, 1, 2}).tolist() == [3]


def test_segment_and_coordinate_count():
    assert avoidance_segment(11, 2) == [0, 1, 2, 3, 4]
    assert avoidance_segment(13, 3) == [0, 1, 2, 3]
    assert coordinates_needed(2, Fraction(1, 2)) == 3


def test_small_value_search():
    assert small_value_search([0, 1], 7) == (0, 0)
    assert small_value_search([5, 2], 11) == (3, 0)
    with pytest.raises(PreconditionError):
        small_value_search([3, 0, 0], 7)


def test_small_value_table_matches_search():
    t, achieved = small_value_table(np.array([[5, 3], [2, 1]]), 11)
    assert t.tolist() == [3, 8]
    assert achieved.tolist() == [0, 0]


def test_small_value_bound():
    assert small_value_bound(2, 16, 1.0) == pytest.approx(8.0)


def test_small_values_stay_under_the_bound():
    rng = np.random.default_rng(0)
    p = 499
    bound = small_value_bound(2, p, 4.0)
    for _ in range(50):
        coeffs = [int(rng.integers(0, p)), int(rng.integers(0, p)), int(rng.integers(1, p))]
        _, achieved = small_value_search(coeffs, p)
        assert abs(achieved) <= bound


def test_closed_form_triangle_is_constant():
    p = 13
    c = (2, 1, 3, 0, 1, 4)
    lin = LinearPart((1, 2, 3), (4, 5, 6))
    d1, d2, d3, constant = closed_form_constants(c, lin, p)
    x, y, z = np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing='ij')
    alpha, beta, gamma = -c[0] * x + d1, -c[2] * y + d2, -c[4] * z + d3
    value = ((alpha + c[0] * x) * (beta + c[1] * y) + (beta + c[2] * y) * (gamma + c[3] * z)
             + (gamma + c[4] * z) * (alpha + c[5] * x)
             + alpha + 4 * x + 2 * beta + 5 * y + 3 * gamma + 6 * z)
    assert (np.mod(value, p) == constant).all()


def test_closed_form_needs_distinct_shifts():
    with pytest.raises(PreconditionError):
        closed_form_constants((1, 0, 1, 0, 1, 1), LinearPart((0, 0, 0), (0, 0, 0)), 13)


def test_five_prime_approximation():
    report = approximation_report(23, 29, 31, 4.0, 4.0)
    assert report['M'] == 5
    assert report['approximation_holds']
    assert analytic_glue_set(23, 29, 31, 4.0, 4.0).sum() == 23
