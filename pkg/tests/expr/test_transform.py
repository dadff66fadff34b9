import itertools

import numpy as np
import pytest

from src.construct.varmap import MapSet, table_map
from src.expr import classify, parse_expression
from src.expr.evaluate import evaluate
from src.expr.model import Atom, Expression, Linear, Term
from src.expr.transform import CancelLinear, Rename, Shift, Transform, make_regroup
from src.residue import Modulus

PRIMES = (5, 7)
MODULUS = Modulus.of(PRIMES)


def all_points(variables):
    """Every assignment of Z_35 to the variables, as residue matrices."""
    grid = np.array(list(itertools.product(range(35), repeat=len(variables))), dtype=np.int64)
    return {v: np.stack([grid[:, j] % p for p in PRIMES], axis=1) for j, v in enumerate(variables)}


def renamed(transform, points):
    out = dict(points)
    for step in transform.steps:
        if isinstance(step, CancelLinear):
            out.pop(step.var, None)
        elif isinstance(step, Rename):
            mapping = step.as_dict
            out = {mapping.get(v, v): x for v, x in out.items()}
    return out


def assert_pullback_identity(expr, transform, seed=0):
    normalized = transform.apply(expr)
    rng = np.random.default_rng(seed)
    maps = MapSet(MODULUS, {
        v: tuple(table_map(i, p, rng.integers(0, p, size=p)) for i, p in enumerate(PRIMES))
        for v in normalized.variables
    })
    pulled = maps.pullback(transform)
    points = all_points(expr.variables)
    assert np.array_equal(evaluate(expr, pulled, points), evaluate(normalized, maps, renamed(transform, points)))


@pytest.mark.parametrize("text", [
    "a(x)*b(y) + b(y) + y",
    "a(x)*b(y) + (a(x)+x)*(b(y)+y) + 2*x",
    "a(x)*(b(y)+y) + b(y)*(c(z)+z) + c(z)*a(x)",
    "(a(x)+x)*b(y) + (b(y)+y)*c(z) + (c(z)+z)*a(x)",
    "a(x)*a(x) + a(x) + b(y) + y",
])
def test_classified_maps_pull_back_pointwise(text):
    expr = parse_expression(text)
    assert_pullback_identity(expr, classify(expr).transform)


def test_every_primitive_pulls_back_pointwise():
    # the two products on (0, 1) collapse to 2·α₀α₁; x₂ only occurs linearly
    expr = Expression(
        (Term(1, (Atom(0, 1), Atom(1, 0))), Term(1, (Atom(0, -1), Atom(1, 0)))),
        (Linear(0, 1, 1), Linear(1, 1, 1), Linear(2, 2, 3)),
    )
    transform = Transform((CancelLinear(2, 2, 3),))
    transform = transform.then(make_regroup(transform.apply(expr), 0, 1))
    transform = transform.then(Shift(0, 1)).then(Rename(((0, 1), (1, 0))))
    assert len(transform.steps) == 4
    assert transform.apply(expr).n_vars == 2
    for seed in range(3):
        assert_pullback_identity(expr, transform, seed)
