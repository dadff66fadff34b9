"""
Case tuples: ordered tuples of distinct residues of Z_Q.

Cases are ranked in lexicographic order, which is the order
itertools.permutations yields them in.
"""

import itertools
import math
from typing import Sequence

import numpy as np

from ..construct.certificate import encode_values


def falling_factorial(n: int, size: int) -> int:
    """n·(n−1)·…·(n−size+1), the number of ordered distinct size-tuples from n values."""
    return math.perm(int(n), int(size)) if size <= n else 0


def all_cases(q: int, size: int) -> np.ndarray:
    """(L, size) array of every case, row r having rank r."""
    count = falling_factorial(q, size)
    flat = np.fromiter(itertools.chain.from_iterable(itertools.permutations(range(q), size)),
                       dtype=np.int64, count=count * size)
    return flat.reshape(count, size)


def case_rank(case: Sequence[int], q: int) -> int:
    """Lexicographic rank of one ordered distinct tuple."""
    size = len(case)
    rank = 0
    for j, c in enumerate(case):
        adjusted = int(c) - sum(1 for earlier in case[:j] if earlier < c)
        rank += adjusted * falling_factorial(q - 1 - j, size - 1 - j)
    return rank


def case_ranks(cases: np.ndarray, q: int) -> np.ndarray:
    """Vectorized case_rank over the rows of an (L, size) array."""
    cases = np.asarray(cases, dtype=np.int64)
    size = cases.shape[1]
    ranks = np.zeros(cases.shape[0], dtype=np.int64)
    for j in range(size):
        smaller = (cases[:, :j] < cases[:, j:j + 1]).sum(axis=1)
        ranks += (cases[:, j] - smaller) * falling_factorial(q - 1 - j, size - 1 - j)
    return ranks


def unrank_case(rank: int, q: int, size: int) -> tuple:
    remaining = list(range(q))
    out = []
    for j in range(size):
        block = falling_factorial(q - 1 - j, size - 1 - j)
        idx, rank = divmod(rank, block)
        out.append(remaining.pop(idx))
    return tuple(out)


def element_codes(x: np.ndarray, primes: Sequence[int]) -> np.ndarray:
    """Code in [0, Q) of each row's residues on the given coordinates."""
    return encode_values(x, primes)
