"""
Explicit subsets of Z_q as integer bitsets.

Bit i of the mask is set iff i ∈ A. Adding a constant s rotates the mask by
s within q bits, so A + B is the OR of |B| rotations of A.
"""

import logging
from typing import Iterable, Iterator

import numpy as np

from ..core.exceptions import BudgetExceededError
from ..core.settings import Settings, get_settings

logger = logging.getLogger(__name__)


class ResidueSet:
    """Immutable subset of Z_q."""

    __slots__ = ('q', '_mask')

    def __init__(self, q: int, mask: int = 0):
        self.q = int(q)
        self._mask = int(mask) & ((1 << self.q) - 1)

    @classmethod
    def of(cls, q: int, elements: Iterable[int]) -> 'ResidueSet':
        mask = 0
        for a in elements:
            mask |= 1 << (int(a) % q)
        return cls(q, mask)

    @classmethod
    def full(cls, q: int) -> 'ResidueSet':
        return cls(q, (1 << q) - 1)

    @property
    def mask(self) -> int:
        return self._mask

    def rotate(self, s: int) -> 'ResidueSet':
        """A + s."""
        s %= self.q
        if not s:
            return self
        m = self._mask
        return ResidueSet(self.q, (m << s) | (m >> (self.q - s)))

    def negate(self) -> 'ResidueSet':
        return ResidueSet.of(self.q, ((-a) % self.q for a in self))

    def union(self, other: 'ResidueSet') -> 'ResidueSet':
        return ResidueSet(self.q, self._mask | other._mask)

    def is_full(self) -> bool:
        return self._mask == (1 << self.q) - 1

    def contains(self, x: int) -> bool:
        return bool((self._mask >> (int(x) % self.q)) & 1)

    def __contains__(self, x: int) -> bool:
        return self.contains(x)

    def __len__(self) -> int:
        return bin(self._mask).count('1')

    def __iter__(self) -> Iterator[int]:
        m = self._mask
        while m:
            lsb = m & -m
            yield lsb.bit_length() - 1
            m ^= lsb

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ResidueSet) and self.q == other.q and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self.q, self._mask))

    def __repr__(self) -> str:
        preview = list(self)[:8]
        return f"ResidueSet(q={self.q}, size={len(self)}, {preview}{'...' if len(self) > 8 else ''})"

    def to_list(self):
        return list(self)


def _check_budget(q: int, settings: Settings = None) -> None:
    limit = (settings or get_settings()).verification.bitset_limit
    if q > limit:
        raise BudgetExceededError(q, limit)


def sumset(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """A + B."""
    if a.q != b.q:
        raise ValueError(f"sets live in Z_{a.q} and Z_{b.q}")
    if len(a) < len(b):
        a, b = b, a
    mask = 0
    for s in b:
        mask |= a.rotate(s).mask
    return ResidueSet(a.q, mask)


def difference_set(a: ResidueSet, settings: Settings = None) -> ResidueSet:
    """A − A."""
    _check_budget(a.q, settings)
    return sumset(a, a.negate())


def iterated_sumset(start: ResidueSet, a: ResidueSet, k: int, settings: Settings = None) -> ResidueSet:
    """S + kA; stops early once the set is all of Z_q."""
    _check_budget(a.q, settings)
    out = start
    for _ in range(k):
        if out.is_full():
            break
        out = sumset(out, a)
    return out


def product_set(a: ResidueSet, settings: Settings = None) -> ResidueSet:
    """A·A = {ab : a, b ∈ A}."""
    _check_budget(a.q, settings)
    elems = np.fromiter(iter(a), dtype=np.int64)
    if not elems.size:
        return ResidueSet(a.q)
    products = np.unique(np.mod(np.multiply.outer(elems, elems), a.q))
    return ResidueSet.of(a.q, products.tolist())


def l_sq_plus_k(a: ResidueSet, l: int, k: int, settings: Settings = None) -> ResidueSet:
    """
    lA² + kA: l products and k plain elements summed.

    Args:
        a: Subset of Z_q
        l: Number of product terms
        k: Number of linear terms

    Returns:
        The sumset; {0} when l = k = 0
    """
    _check_budget(a.q, settings)
    out = ResidueSet.of(a.q, [0])
    if l:
        out = iterated_sumset(out, product_set(a, settings), l, settings)
    out = iterated_sumset(out, a, k, settings)
    logger.debug(f"|{l}A²+{k}A| = {len(out)} in Z_{a.q} for |A| = {len(a)}")
    return out
