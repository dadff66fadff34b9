"""
Prime values and prime windows.

Primality is checked with sympy; bulk ranges come from a numpy sieve so the
assembler can pull hundreds of thousands of case primes at once.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from sympy import isprime

from ..core.exceptions import PrimeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Prime:
    """An odd prime, verified at construction."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, (int, np.integer)):
            raise PrimeError(f"prime must be an integer, got {self.value!r}")
        object.__setattr__(self, 'value', int(self.value))
        if self.value < 3:
            raise PrimeError(f"prime must be at least 3, got {self.value}")
        if not isprime(self.value):
            raise PrimeError(f"{self.value} is not prime")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def as_primes(values: Iterable[int]) -> Tuple[Prime, ...]:
    """Validate a list of integers as distinct primes, preserving order."""
    primes = tuple(Prime(int(v)) for v in values)
    if len(set(primes)) != len(primes):
        raise PrimeError(f"primes must be pairwise distinct: {[int(p) for p in primes]}")
    return primes


def primes_between(lo: int, hi: int) -> np.ndarray:
    """
    All primes in the half-open range [lo, hi), as an int64 array.

    Args:
        lo: Inclusive lower bound
        hi: Exclusive upper bound

    Returns:
        Sorted numpy array of primes
    """
    lo = max(int(lo), 2)
    hi = int(hi)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)

    sieve = np.ones(hi, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(hi ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    found = np.nonzero(sieve[lo:])[0] + lo
    return found.astype(np.int64)


def next_primes(start: int, count: int, exclude: Sequence[int] = ()) -> List[int]:
    """
    The first `count` primes ≥ start, skipping any in `exclude`.

    Grows the sieve window geometrically until enough primes are found.
    """
    start = max(int(start), 3)
    excluded = set(int(e) for e in exclude)
    width = max(1024, count * 32)
    while True:
        candidates = [int(p) for p in primes_between(start, start + width) if int(p) not in excluded]
        if len(candidates) >= count:
            return candidates[:count]
        width *= 2


def primes_in_window(lo: int, hi: int) -> List[int]:
    """Primes strictly between lo and hi."""
    return [int(p) for p in primes_between(int(lo) + 1, int(hi)) if p >= 3]


def dyadic_window(k: int) -> List[int]:
    """Primes in (2^k, 2^{k+1})."""
    return primes_in_window(2 ** k, 2 ** (k + 1))


def check_ordering(primes: Sequence[int]) -> None:
    """
    Enforce 2·min > max across a prime set.

    Raises:
        PrimeError: If the ordering constraint fails
    """
    values = [int(p) for p in primes]
    if values and 2 * min(values) <= max(values):
        raise PrimeError(
            f"primes {values} violate the ordering constraint 2*min > max"
        )


def check_exceeds(primes: Sequence[int], coefficients: Iterable[int]) -> None:
    """
    Every prime must exceed the largest coefficient magnitude.

    Raises:
        PrimeError: If some prime is too small
    """
    bound = max((abs(int(c)) for c in coefficients), default=0)
    for p in primes:
        if int(p) <= bound:
            raise PrimeError(f"prime {int(p)} does not exceed coefficient magnitude {bound}")
