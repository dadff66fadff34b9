import itertools

import pytest

from src.core.exceptions import PreconditionError
from src.expr import Linear, canonicalize, enumerate_expressions
from src.expr.enumerate import set_partitions
from src.expr.model import Atom, Expression, Term


def brute_force_keys(l, k):
    """
    Canonical keys of every way to label 2l + k summand slots and pick shifts.

    Linear summands on variables no product touches are dropped when l ≥ 1:
    an affine choice of their maps cancels them.
    """
    slots = 2 * l + k
    found = set()
    for labels in set_partitions(slots):
        quad_vars = set(labels[:2 * l])
        for shifts in itertools.product((0, 1), repeat=slots):
            terms = tuple(
                Term(1, (Atom(labels[2 * i], shifts[2 * i]), Atom(labels[2 * i + 1], shifts[2 * i + 1])))
                for i in range(l)
            )
            acc = {}
            for label, shift in zip(labels[2 * l:], shifts[2 * l:]):
                lam, mu = acc.get(label, (0, 0))
                acc[label] = (lam + 1, mu + shift)
            linear = tuple(Linear(v, lam, mu) for v, (lam, mu) in sorted(acc.items())
                           if l == 0 or v in quad_vars)
            found.add(canonicalize(Expression(terms, linear)).key())
    return found


@pytest.mark.parametrize("l,k,count", [(0, 1, 2), (0, 2, 6), (1, 0, 6)])
def test_expression_counts(l, k, count):
    assert len(enumerate_expressions(l, k)) == count


def test_single_linear_summand():
    exprs = enumerate_expressions(0, 1)
    assert [e.linear for e in exprs] == [(Linear(0, 1, 0),), (Linear(0, 1, 1),)]


def test_enumeration_is_canonical_and_distinct():
    exprs = enumerate_expressions(1, 1)
    assert all(canonicalize(e) == e for e in exprs)
    assert len({e.key() for e in exprs}) == len(exprs)
    assert [e.n_vars for e in exprs] == sorted(e.n_vars for e in exprs)


@pytest.mark.parametrize("l,k", [
    (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1),
    pytest.param(2, 2, marks=pytest.mark.slow),
    pytest.param(2, 3, marks=pytest.mark.slow),
    pytest.param(3, 0, marks=pytest.mark.slow),
    pytest.param(3, 1, marks=pytest.mark.slow),
    pytest.param(3, 2, marks=pytest.mark.slow),
    pytest.param(3, 3, marks=pytest.mark.slow),
])
def test_enumeration_matches_brute_force(l, k):
    keys = {e.key() for e in enumerate_expressions(l, k)}
    assert keys == brute_force_keys(l, k)


def test_set_partitions_are_counted_by_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("l,k", [(0, 0), (-1, 2), (2, -1)])
def test_rejects_empty_sums(l, k):
    with pytest.raises(PreconditionError):
        enumerate_expressions(l, k)
