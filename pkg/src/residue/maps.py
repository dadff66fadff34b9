"""
Lift, projection and cross-modulus maps.

Scalar versions follow the notation directly; the `*_array` versions are
the numpy forms every verifier loop uses.
"""

import numpy as np
from sympy import mod_inverse
from sympy.ntheory.modular import crt

from ..core.exceptions import NonInvertibleError


def lift(x: int, p: int) -> int:
    """The representative of x mod p in [0, p)."""
    return int(x) % int(p)


def project(z: int, p: int) -> int:
    """Reduce an integer into [0, p); floored, so negative z work."""
    return int(z) % int(p)


def mod_between(x: int, p: int, p_prime: int) -> int:
    """mod_{p,p'}: lift from Z_p, then project into Z_{p'}."""
    return project(lift(x, p), p_prime)


def centered_lift(x: int, p: int) -> int:
    """Representative in (−p/2, p/2]."""
    r = int(x) % int(p)
    return r - p if 2 * r > p else r


def inverse(a: int, p: int, coordinate: int = 0) -> int:
    """Modular inverse, reporting which coordinate failed."""
    a = int(a) % int(p)
    if a == 0:
        raise NonInvertibleError(coordinate, int(p))
    return int(mod_inverse(a, int(p)))


def project_array(z: np.ndarray, p: int) -> np.ndarray:
    return np.mod(np.asarray(z, dtype=np.int64), np.int64(p))


def mod_between_array(x: np.ndarray, p: int, p_prime: int) -> np.ndarray:
    return np.mod(np.mod(np.asarray(x, dtype=np.int64), p), p_prime)


def centered_array(x: np.ndarray, p: int) -> np.ndarray:
    r = np.mod(np.asarray(x, dtype=np.int64), p)
    return np.where(2 * r > p, r - p, r)


def crt_combine(residues, primes) -> int:
    """The unique integer in [0, ∏p) with the given residues."""
    if not primes:
        return 0
    value, _ = crt([int(p) for p in primes], [int(r) for r in residues])
    return int(value)


def crt_split(z: int, primes) -> list:
    return [project(z, p) for p in primes]
