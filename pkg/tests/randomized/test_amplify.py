from fractions import Fraction

import pytest

from src.core.exceptions import PrimeError
from src.randomized import pair_density, pair_windows, prime_density
from src.randomized.amplify import select_primes
from src.randomized.evading import evading_feasible
from src.residue import primes_between

WINDOW = [p for p in range(23, 54) if all(p % d for d in range(2, p))]


def test_window_primes():
    assert WINDOW == [23, 29, 31, 37, 41, 43, 47, 53]


@pytest.mark.parametrize("epsilon,count", [(0.80, 8), (0.82, 7), (0.9, 3)])
def test_fewest_primes_reaching_epsilon(epsilon, count):
    chosen = select_primes(WINDOW, epsilon)
    assert chosen == WINDOW[:count]
    assert prime_density(chosen) <= Fraction(str(epsilon))


def test_exhausted_window():
    with pytest.raises(PrimeError):
        select_primes(WINDOW, 0.79)


def test_densities():
    assert prime_density([3, 5]) == Fraction(8, 15)
    assert pair_density([(7, 5)]) == 1 - Fraction(2, 35)


def test_pair_windows_respect_ordering():
    pairs = pair_windows(6)
    assert pairs
    for p, q in pairs:
        assert 64 < q < p < 2 * q < 256
        assert evading_feasible(p, q)
        assert p in primes_between(64, 128) and q in primes_between(64, 128)
