"""Lift/projection maps and their carry identities."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from src.residue import (
    lift, project, mod_between, centered_lift, Modulus, crt_combine, crt_split,
)

SMALL_PRIMES = list(primerange(3, 48))


def test_lift_examples():
    assert lift(3, 5) == 3
    assert lift(0, 7) == 0
    assert lift(6, 7) == 6


def test_project_examples():
    assert project(12, 5) == 2
    assert project(-1, 7) == 6
    assert project(0, 11) == 0


def test_mod_between_examples():
    assert mod_between(3, 5, 7) == 3
    assert mod_between(6, 7, 5) == 1
    carry = mod_between(3, 5, 7) + mod_between(4, 5, 7) - mod_between((3 + 4) % 5, 5, 7)
    assert carry == 5
    assert carry % 7 in {0, project(5, 7)}


def test_centered_lift_examples():
    assert centered_lift(6, 7) == -1
    assert centered_lift(3, 7) == 3
    assert centered_lift(0, 5) == 0


@pytest.mark.parametrize('p', SMALL_PRIMES)
def test_projection_is_floored_reduction(p):
    z = np.arange(-2 * p * p, 2 * p * p + 1)
    lifted = np.mod(z, p)
    assert np.all((lifted - z) % p == 0)
    nonneg = z >= 0
    assert np.all(lifted[nonneg] <= z[nonneg])
    for value in (-2 * p * p, -1, 0, p, 2 * p * p):
        assert (lift(project(value, p), p) - value) % p == 0


@pytest.mark.parametrize('p', SMALL_PRIMES)
def test_lift_sum_carry(p):
    x, y = np.meshgrid(np.arange(p), np.arange(p), indexing='ij')
    carry = x + y - np.mod(x + y, p)
    assert set(np.unique(carry).tolist()) <= {0, p}


@pytest.mark.parametrize('p', SMALL_PRIMES)
def test_cross_modulus_carry(p):
    x, y = np.meshgrid(np.arange(p), np.arange(p), indexing='ij')
    s = np.mod(x + y, p)
    for p_prime in SMALL_PRIMES:
        diff = np.mod(np.mod(x, p_prime) + np.mod(y, p_prime) - np.mod(s, p_prime), p_prime)
        assert set(np.unique(diff).tolist()) <= {0, project(p, p_prime)}


def test_double_reduction_carry():
    for p3 in SMALL_PRIMES:
        x = np.arange(p3)
        for p2 in SMALL_PRIMES:
            t = math.ceil(p3 / p2)
            assert p3 < (t + 1) * p2
            for p1 in SMALL_PRIMES:
                allowed = {(-j * (p2 % p1)) % p1 for j in range(t + 1)}
                diff = np.mod(np.mod(np.mod(x, p2), p1) - np.mod(x, p1), p1)
                assert set(np.unique(diff).tolist()) <= allowed


@given(
    st.lists(st.sampled_from(SMALL_PRIMES), min_size=1, max_size=3, unique=True),
    st.integers(min_value=0, max_value=10**6),
)
def test_crt_round_trip(primes, seed):
    q = math.prod(primes)
    z = seed % q
    assert crt_combine(crt_split(z, primes), primes) == z
    modulus = Modulus.of(primes)
    assert modulus.from_int(z).to_int() == z
