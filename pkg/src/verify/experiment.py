"""
Exact minimum of |Im(α(x)β(y) + x + y)| over all maps α, β on Z_pq.

Only the ring Z_n, n = pq, matters, so p = 2 is allowed here. For a fixed α,
row y with β(y) = b contributes the value set S(y, b) = {α(x)b + x + y};
the image is the OR of one S(y, ·) per row, and the reachable ORs are
propagated row by row as a boolean table over the 2^n masks, for every α
at once.

Rotating α (α(x) ↦ α(x+t)) only translates the image, so one α per rotation
class is enough.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from sympy import isprime

from ..core.exceptions import BudgetExceededError, PrimeError

logger = logging.getLogger(__name__)

MAX_RING = 6


@dataclass(frozen=True)
class MinImageResult:
    p: int
    q: int
    minimum: int
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]
    alphas_examined: int
    wall_time: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p, 'q': self.q, 'minimum': self.minimum,
            'alpha': list(self.alpha), 'beta': list(self.beta),
            'alphas_examined': self.alphas_examined,
            'lower_bound_min_pq': min(self.p, self.q),
            'wall_time': round(self.wall_time, 4),
        }


def canonical_alphas(n: int) -> np.ndarray:
    """One representative (least rotation) per rotation class of Z_n → Z_n."""
    out: List[Tuple[int, ...]] = []
    for alpha in itertools.product(range(n), repeat=n):
        if alpha == min(alpha[t:] + alpha[:t] for t in range(n)):
            out.append(alpha)
    return np.array(out, dtype=np.int64)


def row_masks(alphas: np.ndarray, n: int) -> np.ndarray:
    """masks[a, y, b] = bitmask of {α_a(x)·b + x + y : x ∈ Z_n}."""
    x = np.arange(n, dtype=np.int64)
    y = np.arange(n, dtype=np.int64)
    b = np.arange(n, dtype=np.int64)
    values = (alphas[:, None, None, :] * b[None, None, :, None] + x + y[None, :, None, None]) % n
    return np.bitwise_or.reduce(np.left_shift(1, values), axis=3)


def _popcounts(n: int) -> np.ndarray:
    return np.array([bin(m).count('1') for m in range(1 << n)], dtype=np.int64)


def image_size(alpha: Tuple[int, ...], beta: Tuple[int, ...], n: int) -> int:
    return len({(alpha[x] * beta[y] + x + y) % n for x in range(n) for y in range(n)})


def min_image_experiment(p: int, q: int, max_ring: int = MAX_RING) -> MinImageResult:
    """
    Brute-force minimum image size of α(x)β(y) + x + y over Z_p × Z_q.

    Args:
        p: Prime
        q: Prime distinct from p
        max_ring: Largest pq searched

    Returns:
        MinImageResult with a minimizing pair

    Raises:
        PrimeError: If p, q are not distinct primes
        BudgetExceededError: If pq exceeds max_ring
    """
    if not (isprime(p) and isprime(q)) or p == q:
        raise PrimeError(f"need two distinct primes, got {p}, {q}")
    n = p * q
    if n > max_ring:
        raise BudgetExceededError(n ** (2 * n), max_ring ** (2 * max_ring))
    started = time.perf_counter()

    alphas = canonical_alphas(n)
    masks = row_masks(alphas, n)
    count = alphas.shape[0]
    reach = np.zeros((count, 1 << n), dtype=bool)
    reach[:, 0] = True
    states = np.arange(1 << n, dtype=np.int64)[None, :]
    for y in range(n):
        nxt = np.zeros_like(reach)
        for b in range(n):
            target = states | masks[:, y, b][:, None]
            r, c = np.nonzero(reach)
            nxt[r, target[r, c]] = True
        reach = nxt

    sizes = np.where(reach, _popcounts(n)[None, :], n + 1).min(axis=1)
    best = int(np.argmin(sizes))
    alpha = tuple(int(v) for v in alphas[best])
    beta = _best_beta(alpha, masks[best], n, int(sizes[best]))
    result = MinImageResult(p, q, int(sizes[best]), alpha, beta, count, time.perf_counter() - started)
    logger.info(f"min image over Z_{p}×Z_{q}: {result.minimum} (≥ {min(p, q)}) from {count} α classes")
    return result


def _best_beta(alpha: Tuple[int, ...], masks: np.ndarray, n: int, size: int) -> Tuple[int, ...]:
    betas = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)
    ors = np.bitwise_or.reduce(masks[np.arange(n)[None, :], betas], axis=1)
    counts = _popcounts(n)[ors]
    k = int(np.flatnonzero(counts == size)[0])
    return tuple(int(v) for v in betas[k])
