from fractions import Fraction

import numpy as np
import pytest

from src.assemble import all_cases, case_rank, case_ranks, falling_factorial, plan, unrank_case
from src.assemble.plan import ExpressionPlan, fitted_schedule, linear_schedule
from src.core.exceptions import PreconditionError
from src.expr import parse_expression


def test_single_linear_summand_plan():
    staged = plan(0, 1, 0.5)
    assert len(staged.expressions) == 2
    assert staged.boundaries == (0, 2)
    assert staged.schedule == (Fraction(1, 2),)
    assert staged.is_linear(0) and staged.is_linear(1)


def test_two_linear_summands_plan():
    staged = plan(0, 2, Fraction(1, 2))
    assert staged.boundaries == (0, 3, 6)
    assert staged.schedule == (Fraction(1, 4), Fraction(1, 2))
    assert staged.stage_budget(2) == Fraction(1, 4)
    assert staged.index_of(parse_expression("a(x) + b(y)")) is not None
    assert staged.index_of(parse_expression("a(x)*b(y)")) is None


def test_quadratic_plan_has_six_expressions():
    staged = plan(1, 0, 0.5)
    assert len(staged.expressions) == 6
    assert not any(staged.is_linear(i) for i in range(6))


def test_schedule_is_linear():
    assert linear_schedule(Fraction(3, 5), 3) == (Fraction(1, 5), Fraction(2, 5), Fraction(3, 5))


@pytest.mark.parametrize("l,k,epsilon", [(4, 0, 0.5), (0, 0, 0.5), (0, 1, 1), (0, 1, 0)])
def test_plan_preconditions(l, k, epsilon):
    with pytest.raises(PreconditionError):
        plan(l, k, epsilon)


def test_plan_from_arbitrary_expressions_deduplicates():
    exprs = [parse_expression("a(x)*b(y)"), parse_expression("b(y)*a(x)"), parse_expression("a(x) + x")]
    staged = ExpressionPlan.from_expressions(exprs, 0.3)
    assert len(staged.expressions) == 2
    assert staged.n_stages == 2


def test_case_counts():
    assert falling_factorial(385, 2) == 147_840
    assert falling_factorial(105, 2) == 10_920
    assert falling_factorial(2, 3) == 0


def test_ranks_follow_lexicographic_order():
    cases = all_cases(6, 3)
    assert cases.shape == (120, 3)
    assert np.array_equal(case_ranks(cases, 6), np.arange(120))
    for rank in (0, 17, 119):
        assert case_rank(cases[rank].tolist(), 6) == rank
        assert unrank_case(rank, 6, 3) == tuple(cases[rank].tolist())


def test_fitted_schedule_gives_stage_one_its_bound():
    first = Fraction(167, 385)
    assert fitted_schedule(Fraction(1, 2), first, 2) == (first, Fraction(1, 2))
    assert fitted_schedule(Fraction(1, 2), Fraction(1, 10), 3) == (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2))
    assert fitted_schedule(Fraction(1, 2), Fraction(1, 10), 1) == (Fraction(1, 2),)


@pytest.mark.parametrize("first", [Fraction(0), Fraction(1, 2), Fraction(3, 4)])
def test_fitted_schedule_needs_room_below_epsilon(first):
    with pytest.raises(PreconditionError):
        fitted_schedule(Fraction(1, 2), first, 2)


def test_rescheduled_plan_keeps_stage_one_sizing():
    staged = plan(0, 2, 0.5)
    moved = staged.with_schedule((Fraction(2, 5), Fraction(1, 2)))
    assert moved.schedule == (Fraction(2, 5), Fraction(1, 2))
    assert moved.stage_one_target == Fraction(1, 4)
    assert moved.stage_budget(2) == Fraction(1, 10)
    assert moved.index_of(parse_expression("a(x) + b(y)")) == staged.index_of(parse_expression("a(x) + b(y)"))
