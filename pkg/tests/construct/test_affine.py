import itertools

import pytest

from src.construct.affine import affine_solve, solve_bilinear_block
from src.core.exceptions import PreconditionError


def block_value(terms, lam1, mu1, lam2, mu2, sol, x, y, p):
    alpha = (sol.a * x + sol.b) % p
    beta = (sol.c * y + sol.d) % p
    total = sum(w * (alpha + a * x) * (beta + b * y) for w, a, b in terms)
    return (total + lam1 * alpha + mu1 * x + lam2 * beta + mu2 * y) % p


@pytest.mark.parametrize("terms,lin", [
    ([(1, 0, 0), (1, 1, 1)], (0, 0, 0, 0)),
    ([(1, 0, 0), (1, 1, 1)], (2, 3, 1, 5)),
    ([(2, 0, 1), (1, 3, 0)], (1, 0, 4, 2)),
    ([(1, 0, 0), (1, 1, 0), (1, 0, 2)], (0, 1, 1, 0)),
])
def test_bilinear_block_is_constant(terms, lin):
    p = 11
    lam1, mu1, lam2, mu2 = lin
    sol = solve_bilinear_block(terms, lam1, mu1, lam2, mu2, p)
    values = {block_value(terms, lam1, mu1, lam2, mu2, sol, x, y, p)
              for x, y in itertools.product(range(p), repeat=2)}
    assert values == {sol.constant}


@pytest.mark.parametrize("nu1,nu2,lam1,lam2,mu1,mu2", [
    (1, 1, 0, 0, 0, 0),
    (1, -1, 1, 2, 3, 4),
    (2, 3, 0, 1, 1, 0),
])
def test_normalized_block_is_constant(nu1, nu2, lam1, lam2, mu1, mu2):
    p = 13
    sol = affine_solve(nu1, nu2, lam1, lam2, mu1, mu2, p)
    terms = [(1, 0, 0), (1, nu1, nu2)]
    values = {block_value(terms, lam1, mu1, lam2, mu2, sol, x, y, p)
              for x, y in itertools.product(range(p), repeat=2)}
    assert values == {sol.constant}


def test_factorizing_block_is_rejected():
    with pytest.raises(PreconditionError):
        solve_bilinear_block([(1, 0, 0)], 1, 1, 1, 1, 7)
    with pytest.raises(PreconditionError):
        affine_solve(7, 1, 0, 0, 0, 0, 7)
