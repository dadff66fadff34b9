"""
Small values of one-variable polynomials over Z_p.

A polynomial of degree d with a non-zero non-constant part attains a value
of centered size at most C_d·p^(1−2^(−d)). We do not trust the constant:
the whole of Z_p is scanned and the true minimizer is kept.
"""

from typing import Sequence, Tuple

import numpy as np

from ..core.exceptions import PreconditionError
from ..residue import centered_array
from .avoidance import polynomial_values


def small_value_bound(d: int, p: int, constant: float) -> float:
    """C_d·p^(1−2^(−d))."""
    return constant * p ** (1.0 - 2.0 ** (-d))


def small_value_search(coeffs: Sequence[int], p: int) -> Tuple[int, int]:
    """
    Argument with the smallest centered value; first found on ties.

    Args:
        coeffs: c₀, c₁, …, c_d
        p: Prime

    Returns:
        (t, achieved) with achieved the centered value at t

    Raises:
        PreconditionError: If c₁..c_d all vanish mod p
    """
    coeffs = [int(c) % p for c in coeffs]
    if not any(coeffs[1:]):
        raise PreconditionError("polynomial has no non-constant term mod p")
    values = centered_array(polynomial_values(np.array(coeffs, dtype=np.int64)[:, None], p)[:, 0], p)
    t = int(np.argmin(np.abs(values)))
    return t, int(values[t])


def small_value_table(coeffs: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    small_value_search for many polynomials at once.

    Args:
        coeffs: (d+1, m) array; column x is one polynomial in t
        p: Prime

    Returns:
        (t, achieved) arrays of length m

    Raises:
        PreconditionError: If some column has no non-constant term
    """
    coeffs = np.mod(np.asarray(coeffs, dtype=np.int64), p)
    if not np.all(np.any(coeffs[1:] != 0, axis=0)):
        raise PreconditionError("some polynomial has no non-constant term mod p")
    values = centered_array(polynomial_values(coeffs, p), p)
    t = np.argmin(np.abs(values), axis=0).astype(np.int64)
    achieved = values[t, np.arange(values.shape[1])]
    return t, achieved
