"""
Density amplification by stacking independent per-prime (or per-pair) builds.

A build that misses m of the q values of its block has density 1 − m/q;
stacking blocks multiplies the densities, so enough blocks push the product
below any ε > 0.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..construct.certificate import BlockProduct, Certificate
from ..construct.varmap import MapSet, stack_maps
from ..core.exceptions import PrimeError
from ..core.settings import Settings, get_settings
from ..expr.model import Expression
from ..residue import Modulus
from ..residue.primes import primes_in_window
from .evading import evading_feasible
from .final_pq import final_pq
from .rng import RetryPolicy, RngSpec

logger = logging.getLogger(__name__)

BlockBuild = Tuple[MapSet, Certificate, Dict[str, Any]]


def prime_density(primes: Iterable[int]) -> Fraction:
    """∏ (p − 1)/p."""
    out = Fraction(1)
    for p in primes:
        out *= Fraction(int(p) - 1, int(p))
    return out


def pair_density(pairs: Iterable[Tuple[int, int]]) -> Fraction:
    """∏ (1 − (p − q)/(pq))."""
    out = Fraction(1)
    for p, q in pairs:
        out *= 1 - Fraction(p - q, p * q)
    return out


def select_primes(window: Sequence[int], epsilon: float) -> List[int]:
    """
    Fewest primes of the window, smallest first, with ∏(p−1)/p ≤ ε.

    Raises:
        PrimeError: If the whole window does not reach ε
    """
    target = Fraction(str(epsilon))
    chosen: List[int] = []
    for p in sorted(int(p) for p in window):
        chosen.append(p)
        if prime_density(chosen) <= target:
            return chosen
    raise PrimeError(f"window {sorted(window)} reaches density {float(prime_density(chosen)):.4f} > ε = {epsilon}")


def stack_blocks(blocks: List[BlockBuild]) -> Tuple[Modulus, MapSet, BlockProduct]:
    maps = stack_maps([m for m, _, _ in blocks])
    offsets, off = [], 0
    for m, _, _ in blocks:
        offsets.append(tuple(range(off, off + len(m.modulus))))
        off += len(m.modulus)
    certificate = BlockProduct(tuple((coords, cert) for coords, (_, cert, _) in zip(offsets, blocks)))
    return maps.modulus, maps, certificate


def prob_amplify(build_one: Callable[[int], BlockBuild], window: Sequence[int],
                 epsilon: float) -> Tuple[Modulus, MapSet, Certificate, Dict[str, Any]]:
    """
    Stack single-prime builds until the density drops to ε.

    Args:
        build_one: p ↦ (maps over [p], certificate, measurements)
        window: Candidate primes
        epsilon: Target density

    Returns:
        (modulus, stacked maps, BlockProduct certificate, measurements)

    Raises:
        PrimeError: If the window is exhausted before ε
    """
    primes = select_primes(window, epsilon)
    blocks = [build_one(p) for p in primes]
    modulus, maps, certificate = stack_blocks(blocks)
    density = prime_density(primes)
    logger.info(f"amplified over {primes}: density {float(density):.4f} ≤ {epsilon}")
    return modulus, maps, certificate, {
        'primes': primes,
        'density': str(density),
        'density_float': float(density),
        'blocks': [extra for _, _, extra in blocks],
    }


def pair_windows(k: int) -> List[Tuple[int, int]]:
    """
    Pairs (p, q) from the k-th dyadic window.

    q runs over (2^k, 4/3·2^k) and p over (5/3·2^k, 2^{k+1}), both ascending,
    zipped; pairs failing q < p < 2q or the evading-family count are dropped.
    """
    base = 2 ** k
    window = primes_in_window(base, 2 * base)
    qs = [r for r in window if 3 * r < 4 * base]
    ps = [r for r in window if 3 * r > 5 * base]
    return [(p, q) for q, p in zip(qs, ps) if q < p < 2 * q and evading_feasible(p, q)]


def pair_window_amplify(expr: Expression, params: Dict[str, int], epsilon: float, windows: Iterable[int],
                        rng: RngSpec, policy: RetryPolicy, budget: Optional[int] = None,
                        settings: Settings = None) -> Tuple[Modulus, MapSet, Certificate, Dict[str, Any]]:
    """
    Stack two-prime builds over dyadic windows until ∏(1 − (p−q)/(pq)) ≤ ε.

    Pair j is built from seed rng.seed + j·max_retries so no two pairs share
    a generator stream.

    Raises:
        PrimeError: If the windows run out of pairs before ε
    """
    settings = settings or get_settings()
    target = Fraction(str(epsilon))
    pairs: List[Tuple[int, int]] = []
    blocks: List[BlockBuild] = []
    for k in windows:
        for p, q in pair_windows(k):
            spec = RngSpec((rng.seed + len(pairs) * policy.max_retries) % 2 ** 64, rng.algorithm)
            _, maps, cert, extra = final_pq(expr, params, p, q, spec, policy, budget, settings)
            pairs.append((p, q))
            blocks.append((maps, cert, {'p': p, 'q': q, **extra}))
            if pair_density(pairs) <= target:
                modulus, stacked, certificate = stack_blocks(blocks)
                density = pair_density(pairs)
                logger.info(f"{len(pairs)} pairs reach density {float(density):.6f} ≤ {epsilon}")
                return modulus, stacked, certificate, {
                    'pairs': [list(pq) for pq in pairs],
                    'density': str(density),
                    'density_float': float(density),
                    'blocks': [extra for _, _, extra in blocks],
                }
    raise PrimeError(f"windows exhausted at density {float(pair_density(pairs)):.6f} > ε = {epsilon}")
