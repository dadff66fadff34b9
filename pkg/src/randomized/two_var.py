"""
Two variables with a loop: n₁α² + α(n₂x + n₃β + n₄y) + x(n₅x + n₆β + n₇y) + λ₁α + μ₁x + λ₂β + μ₂y.

Grouped by β the expression is β·(n₃α + n₆x + λ₂) + R(x, y), so once α avoids
the root of the bracket, each y forbids at most p values of β(y), one per x.
A random α leaves some value free for every y with positive probability;
β(y) takes the smallest free one and the expression never vanishes.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..core.exceptions import CertificateViolation, PreconditionError, PrimeError
from ..residue import inverse
from .rng import RetryPolicy, RngSpec, las_vegas

logger = logging.getLogger(__name__)

COEFFICIENTS = ('n1', 'n2', 'n3', 'n4', 'n5', 'n6', 'n7', 'lam1', 'mu1', 'lam2', 'mu2')


@dataclass(frozen=True)
class TwoVarMaps:
    alpha: np.ndarray
    beta: np.ndarray
    retries: int


def union_bound(p: int) -> Fraction:
    """p·p!·2^p / (p−1)^p; success is guaranteed to be possible when < 1."""
    return Fraction(p * math.factorial(p) * 2 ** p, (p - 1) ** p)


def forbidden_alpha(n3: int, n6: int, lam2: int, p: int) -> np.ndarray:
    """−(n₆x + λ₂)/n₃ for every x."""
    x = np.arange(p, dtype=np.int64)
    return np.mod(-(n6 * x + lam2) * inverse(n3, p), p)


def draw_avoiding(rng: np.random.Generator, forbidden: np.ndarray, p: int) -> np.ndarray:
    """Uniform on Z_p minus one forbidden value per position."""
    r = rng.integers(0, p - 1, size=forbidden.shape[0], dtype=np.int64)
    return r + (r >= forbidden)


def expression_values(n: Dict[str, int], alpha: np.ndarray, beta: np.ndarray, p: int) -> np.ndarray:
    """(p_x, p_y) values of the expression mod p."""
    x = np.arange(p, dtype=np.int64)[:, None]
    y = np.arange(p, dtype=np.int64)[None, :]
    a = alpha[:, None]
    b = beta[None, :]
    total = (n['n1'] * a % p * a + a * ((n['n2'] * x + n['n3'] * b + n['n4'] * y) % p)
             + x * ((n['n5'] * x + n['n6'] * b + n['n7'] * y) % p)
             + n['lam1'] * a + n['mu1'] * x + n['lam2'] * b + n['mu2'] * y)
    return np.mod(total, p)


def prob_two_var(params: Dict[str, int], p: int, rng: RngSpec, policy: RetryPolicy) -> TwoVarMaps:
    """
    α, β with the expression nonzero on all of Z_p².

    Args:
        params: n1..n7, lam1, mu1, lam2, mu2
        p: Prime with p·p!·2^p < (p−1)^p
        rng: Seed specification
        policy: Retry budget

    Raises:
        PreconditionError: If n₁ or n₃ vanishes mod p
        PrimeError: If the union bound does not hold for p
        RetriesExhaustedError: If no attempt succeeds
    """
    n = {k: int(params.get(k, 0)) for k in COEFFICIENTS}
    if n['n1'] % p == 0 or n['n3'] % p == 0:
        raise PreconditionError(f"n₁ and n₃ must be non-zero mod {p}")
    bound = union_bound(p)
    if bound >= 1:
        raise PrimeError(f"p = {p} fails the union bound ({float(bound):.3g} ≥ 1)")

    x = np.arange(p, dtype=np.int64)
    avoid = forbidden_alpha(n['n3'], n['n6'], n['lam2'], p)

    def attempt(gen: np.random.Generator) -> Tuple[Optional[Tuple[np.ndarray, np.ndarray]], Optional[Dict[str, Any]]]:
        alpha = draw_avoiding(gen, avoid, p)
        den = np.mod(n['n3'] * alpha + n['n6'] * x + n['lam2'], p)
        inv = np.array([inverse(int(d), p) for d in den], dtype=np.int64)
        fixed = np.mod(alpha * ((n['n1'] * alpha + n['n2'] * x + n['lam1']) % p)
                       + n['n5'] * x % p * x + n['mu1'] * x, p)
        slope = np.mod(n['n4'] * alpha + n['n7'] * x + n['mu2'], p)
        beta = np.zeros(p, dtype=np.int64)
        for y in range(p):
            excluded = np.mod(-(y * slope + fixed) % p * inv, p)
            free = np.ones(p, dtype=bool)
            free[excluded] = False
            if not free.any():
                return None, {'y': y}
            beta[y] = int(np.argmax(free))
        return (alpha, beta), None

    (alpha, beta), retries = las_vegas(attempt, rng, policy, f"two-variable construction over {p}")
    values = expression_values(n, alpha, beta, p)
    zeros = np.argwhere(values == 0)
    if zeros.size:
        raise CertificateViolation("two-variable expression vanishes", {"x": int(zeros[0][0]), "y": int(zeros[0][1])})
    logger.info(f"two-variable construction over {p}: zero avoided on all {p * p} pairs ({retries} retries)")
    return TwoVarMaps(alpha, beta, retries)
