"""
A family β_s that keeps αβ + (α+c₁x)(β+c₂y) + λ₁α + μ₁x + λ₂β + μ₂y + f(s) away from 0.

Written as β·(2α + c₁x + λ₂) + y(c₂α + c₁c₂x + μ₂) + λ₁α + μ₁x + f(s), each
(y, s) forbids one β value per x. The forbidden set only depends on f(s), so
it is computed once per distinct target value.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import CertificateViolation, PrimeError
from ..residue import inverse
from .rng import RetryPolicy, RngSpec, las_vegas
from .two_var import draw_avoiding

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvadingFamily:
    """alpha[x] and beta[s, y]."""

    alpha: np.ndarray
    beta: np.ndarray
    retries: int


def evading_feasible(size: int, q: int) -> bool:
    """|S|·q²·q! < (q−1)^q, exactly."""
    return size * q * q * math.factorial(q) < (q - 1) ** q


def block_values(coeffs: Dict[str, int], alpha: np.ndarray, beta: np.ndarray, q: int) -> np.ndarray:
    """(q_x, q_y) values of the bilinear block without f(s)."""
    c1, c2 = coeffs['c1'], coeffs['c2']
    x = np.arange(q, dtype=np.int64)[:, None]
    y = np.arange(q, dtype=np.int64)[None, :]
    a = alpha[:, None]
    b = beta[None, :]
    total = (a * b % q + (a + c1 * x) % q * ((b + c2 * y) % q)
             + coeffs['lam1'] * a + coeffs['mu1'] * x + coeffs['lam2'] * b + coeffs['mu2'] * y)
    return np.mod(total, q)


def evading_family(targets: Sequence[int], coeffs: Dict[str, int], q: int,
                   rng: RngSpec, policy: RetryPolicy) -> EvadingFamily:
    """
    α and β_s with block(x, y) + f(s) ≠ 0 for every x, y and s.

    Args:
        targets: f(s) for s = 0..|S|−1, values in Z_q
        coeffs: c1, c2, lam1, mu1, lam2, mu2
        q: Prime
        rng: Seed specification
        policy: Retry budget

    Raises:
        PrimeError: If |S|·q²·q! ≥ (q−1)^q
        RetriesExhaustedError: If no attempt succeeds
    """
    f = np.mod(np.asarray(targets, dtype=np.int64), q)
    if not evading_feasible(f.size, q):
        raise PrimeError(f"|S| = {f.size} is too large for q = {q}")
    c1, c2 = coeffs['c1'], coeffs['c2']
    lam1, mu1, lam2, mu2 = (coeffs.get(k, 0) for k in ('lam1', 'mu1', 'lam2', 'mu2'))
    x = np.arange(q, dtype=np.int64)
    avoid = np.mod(-(c1 * x + lam2) * inverse(2, q), q)
    distinct, index = np.unique(f, return_inverse=True)

    def attempt(gen: np.random.Generator) -> Tuple[Optional[Tuple[np.ndarray, np.ndarray]], Optional[Dict[str, Any]]]:
        alpha = draw_avoiding(gen, avoid, q)
        den = np.mod(2 * alpha + c1 * x + lam2, q)
        inv = np.array([inverse(int(d), q) for d in den], dtype=np.int64)
        slope = np.mod(c2 * alpha + c1 * c2 * x + mu2, q)
        fixed = np.mod(lam1 * alpha + mu1 * x, q)
        table = np.zeros((distinct.size, q), dtype=np.int64)
        for k, v in enumerate(distinct):
            for y in range(q):
                excluded = np.mod(-((y * slope + fixed + v) % q) * inv, q)
                free = np.ones(q, dtype=bool)
                free[excluded] = False
                if not free.any():
                    return None, {'y': y, 'target': int(v)}
                table[k, y] = int(np.argmax(free))
        return (alpha, table), None

    (alpha, table), retries = las_vegas(attempt, rng, policy, f"evading family over {q}")
    beta = table[index]

    for s in range(f.size):
        values = block_values({**coeffs, 'lam1': lam1, 'mu1': mu1, 'lam2': lam2, 'mu2': mu2},
                              alpha, beta[s], q)
        hits = np.argwhere((values + f[s]) % q == 0)
        if hits.size:
            raise CertificateViolation("evading family hits 0",
                                       {'s': s, 'x': int(hits[0][0]), 'y': int(hits[0][1])})
    logger.info(f"evading family over {q}: {f.size} targets, {f.size * q * q} triples checked ({retries} retries)")
    return EvadingFamily(alpha, beta, retries)
