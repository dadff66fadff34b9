"""
Pointwise avoidance: pick α(x) so that c_d(x)α^d + … + c₀(x) misses F.

If every v ∈ Z_p hit F for some x, one f ∈ F would be hit d+1 times and
the polynomial minus f would vanish identically, so c₁(x) = … = c_d(x) = 0.
"""

import logging
from typing import Iterable

import numpy as np

from ..core.exceptions import PreconditionError

logger = logging.getLogger(__name__)


def polynomial_values(coeffs: np.ndarray, p: int) -> np.ndarray:
    """
    All values c_d(x)v^d + … + c₀(x) for v ∈ Z_p.

    Args:
        coeffs: (d+1, m) array, row j holding c_j over the m inputs
        p: Prime

    Returns:
        (p, m) array indexed by [v, x]
    """
    coeffs = np.mod(np.asarray(coeffs, dtype=np.int64), p)
    v = np.arange(p, dtype=np.int64)[:, None]
    acc = np.broadcast_to(coeffs[-1], (p, coeffs.shape[1])).copy()
    for j in range(coeffs.shape[0] - 2, -1, -1):
        acc = (acc * v + coeffs[j]) % p
    return acc


def choose_alpha_avoiding(p: int, d: int, coeffs: np.ndarray, forbidden: Iterable[int]) -> np.ndarray:
    """
    Table α over the m inputs whose polynomial values avoid `forbidden`.

    Candidates v = 0, 1, 2, … are scanned and the first success is kept;
    inputs where c₁..c_d all vanish get α = 0.

    Args:
        p: Prime
        d: Degree in α
        coeffs: (d+1, m) coefficient tables
        forbidden: The set F ⊂ Z_p

    Returns:
        int64 array of length m

    Raises:
        PreconditionError: If p ≤ d or |F| ≥ p/d
    """
    forbidden = {int(f) % p for f in forbidden}
    if p <= d:
        raise PreconditionError(f"prime {p} must exceed the degree {d}")
    if len(forbidden) * d >= p:
        raise PreconditionError(f"|F| = {len(forbidden)} is not below p/d = {p}/{d}")

    coeffs = np.mod(np.asarray(coeffs, dtype=np.int64), p)
    if coeffs.shape[0] != d + 1:
        raise ValueError(f"expected {d + 1} coefficient rows, got {coeffs.shape[0]}")
    mask = np.zeros(p, dtype=bool)
    mask[list(forbidden)] = True

    values = polynomial_values(coeffs, p)
    good = ~mask[values]
    degenerate = ~np.any(coeffs[1:] != 0, axis=0)
    table = np.argmax(good, axis=0).astype(np.int64)
    table[degenerate] = 0

    unresolved = ~good.any(axis=0) & ~degenerate
    if unresolved.any():
        raise AssertionError(f"avoidance failed at inputs {np.nonzero(unresolved)[0][:5].tolist()}")
    logger.debug(f"avoidance over Z_{p}: {int(degenerate.sum())} degenerate inputs")
    return table
