import pytest

from src.core.exceptions import ModulusMismatchError, NonInvertibleError, PrimeError
from src.residue import Modulus, Prime, check_ordering, primes_between, next_primes, dyadic_window


def test_prime_validation():
    assert Prime(7).value == 7
    with pytest.raises(PrimeError):
        Prime(9)
    with pytest.raises(PrimeError):
        Prime(2)


def test_modulus_product_and_distinctness():
    modulus = Modulus.of([5, 7])
    assert modulus.q == 35
    with pytest.raises(PrimeError):
        Modulus.of([5, 5])


def test_modulus_rejects_small_primes_for_coefficients():
    with pytest.raises(PrimeError):
        Modulus.of([5, 7], coefficients=[5])


def test_ring_arithmetic_z35():
    z35 = Modulus.of([5, 7])
    a = z35.element([2, 3])
    b = z35.element([3, 5])
    assert (a * b).residues == (1, 1)
    assert z35.one().inverse().residues == (1, 1)
    assert (a - a) == z35.zero()
    assert (-a + a) == z35.zero()
    assert (a * a.inverse()) == z35.one()


def test_inverse_reports_coordinate():
    z35 = Modulus.of([5, 7])
    with pytest.raises(NonInvertibleError) as err:
        z35.element([0, 3]).inverse()
    assert err.value.coordinate == 0


def test_mixed_modulus_is_an_error():
    a = Modulus.of([5, 7]).one()
    b = Modulus.of([5, 11]).one()
    with pytest.raises(ModulusMismatchError):
        a + b


def test_prime_ranges():
    assert primes_between(10, 30).tolist() == [11, 13, 17, 19, 23, 29]
    assert next_primes(100, 3) == [101, 103, 107]
    assert next_primes(100, 2, exclude=[101]) == [103, 107]
    assert dyadic_window(4) == [17, 19, 23, 29, 31]


def test_ordering_constraint():
    check_ordering([7, 11, 13])
    with pytest.raises(PrimeError):
        check_ordering([5, 7, 11])
