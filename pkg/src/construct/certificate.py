"""
Machine-checkable image certificates.

Every certificate answers `contains(values)` for a batch of attained
values (an (N, n) residue matrix) in O(n) per value, and reports the
claimed bound on the image size.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Dict, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import BudgetExceededError

MAX_CODE = 2 ** 62


def encode_values(values: np.ndarray, primes: Sequence[int]) -> np.ndarray:
    """
    Mixed-radix code of each residue row; a bijection onto [0, q).

    Raises:
        BudgetExceededError: If q does not fit the int64 code range
    """
    q = math.prod(int(p) for p in primes)
    if q > MAX_CODE:
        raise BudgetExceededError(q, MAX_CODE)
    values = np.asarray(values, dtype=np.int64)
    code = np.zeros(values.shape[0], dtype=np.int64)
    radix = 1
    for i, p in enumerate(primes):
        code += values[:, i] * np.int64(radix)
        radix *= int(p)
    return code


def decode_values(codes: np.ndarray, primes: Sequence[int]) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros((codes.shape[0], len(primes)), dtype=np.int64)
    for i, p in enumerate(primes):
        out[:, i] = codes % p
        codes = codes // p
    return out


class Certificate(ABC):
    """Superset description of an image with a size bound."""

    kind: ClassVar[str] = 'abstract'

    @abstractmethod
    def contains(self, values: np.ndarray) -> np.ndarray:
        """Boolean mask over the rows of an (N, n) residue matrix."""

    @property
    @abstractmethod
    def claimed_size(self) -> int:
        """Upper bound on the number of attained values."""

    @abstractmethod
    def details(self) -> Dict:
        """Kind-specific fields for reports."""

    def to_dict(self) -> Dict:
        return {'kind': self.kind, 'claimed_size': str(self.claimed_size), **self.details()}


@dataclass(frozen=True, eq=False)
class ExactValueSet(Certificate):
    """The image lies in an explicit list of ring elements."""

    primes: Tuple[int, ...]
    values: np.ndarray

    kind: ClassVar[str] = 'exact_value_set'

    @classmethod
    def from_integers(cls, primes: Sequence[int], integers) -> 'ExactValueSet':
        ints = [int(z) for z in integers]
        rows = np.array([[z % p for p in primes] for z in ints], dtype=np.int64).reshape(len(ints), len(primes))
        return cls(tuple(int(p) for p in primes), np.unique(rows, axis=0))

    def contains(self, values: np.ndarray) -> np.ndarray:
        allowed = encode_values(self.values, self.primes)
        return np.isin(encode_values(values, self.primes), allowed)

    @property
    def claimed_size(self) -> int:
        return int(np.unique(encode_values(self.values, self.primes)).size)

    def details(self) -> Dict:
        preview = self.values[:32].tolist()
        return {'primes': list(self.primes), 'values': preview, 'truncated': len(self.values) > 32}


@dataclass(frozen=True, eq=False)
class PerCoordinateSet(Certificate):
    """Coordinate i takes values in allowed[i] (a boolean mask over Z_{p_i})."""

    primes: Tuple[int, ...]
    allowed: Tuple[np.ndarray, ...]

    kind: ClassVar[str] = 'per_coordinate_set'

    def contains(self, values: np.ndarray) -> np.ndarray:
        ok = np.ones(values.shape[0], dtype=bool)
        for i, mask in enumerate(self.allowed):
            ok &= mask[values[:, i]]
        return ok

    @property
    def claimed_size(self) -> int:
        return math.prod(int(mask.sum()) for mask in self.allowed)

    def details(self) -> Dict:
        return {'primes': list(self.primes), 'allowed_counts': [int(m.sum()) for m in self.allowed]}


@dataclass(frozen=True, eq=False)
class LinearFunctionalMembership(Certificate):
    """
    Φ(v) = Σ_i ι_{p_i}(w_i·(v_i − o_i)) summed over the integers, optionally
    reduced mod a reference prime; the image lies in Φ⁻¹(allowed).

    `allowed` is a boolean mask over [0, reference) or, without a reference,
    over [0, Σ(p_i − 1)].
    """

    primes: Tuple[int, ...]
    weights: Tuple[int, ...]
    allowed: np.ndarray
    reference: Optional[int] = None
    offset: Optional[Tuple[int, ...]] = None

    kind: ClassVar[str] = 'linear_functional'

    def __post_init__(self):
        size = self.reference if self.reference is not None else sum(p - 1 for p in self.primes) + 1
        if self.allowed.shape != (size,):
            raise ValueError(f"allowed mask has shape {self.allowed.shape}, expected ({size},)")

    def phi(self, values: np.ndarray) -> np.ndarray:
        total = np.zeros(values.shape[0], dtype=np.int64)
        for i, (p, w) in enumerate(zip(self.primes, self.weights)):
            v = values[:, i]
            if self.offset is not None:
                v = v - self.offset[i]
            total += np.mod((w % p) * np.mod(v, p), p)
        if self.reference is not None:
            total %= self.reference
        return total

    def contains(self, values: np.ndarray) -> np.ndarray:
        return self.allowed[self.phi(values)]

    def histogram(self) -> np.ndarray:
        """Number of ring elements per value of Φ; exact, w_i being units."""
        hist = np.ones(1, dtype=np.int64)
        for p in self.primes:
            hist = np.convolve(hist, np.ones(p, dtype=np.int64))
        if self.reference is not None:
            folded = np.zeros(self.reference, dtype=np.int64)
            np.add.at(folded, np.arange(hist.size) % self.reference, hist)
            hist = folded
        return hist

    @property
    def claimed_size(self) -> int:
        return int(self.histogram()[self.allowed].sum())

    def details(self) -> Dict:
        return {
            'primes': list(self.primes), 'weights': list(self.weights),
            'reference': self.reference,
            'offset': None if self.offset is None else list(self.offset),
            'allowed_count': int(self.allowed.sum()),
            'allowed_preview': np.nonzero(self.allowed)[0][:64].tolist(),
        }


@dataclass(frozen=True, eq=False)
class AvoidedValues(Certificate):
    """The listed ring elements are never attained."""

    primes: Tuple[int, ...]
    avoided: np.ndarray

    kind: ClassVar[str] = 'avoided_values'

    def contains(self, values: np.ndarray) -> np.ndarray:
        return ~np.isin(encode_values(values, self.primes), encode_values(self.avoided, self.primes))

    @property
    def claimed_size(self) -> int:
        distinct = np.unique(encode_values(self.avoided, self.primes)).size
        return math.prod(self.primes) - int(distinct)

    def details(self) -> Dict:
        return {'primes': list(self.primes), 'avoided': self.avoided.tolist()}


@dataclass(frozen=True)
class SizeBoundOnly(Certificate):
    """A bound with no membership test; contains() accepts everything."""

    claimed: int

    kind: ClassVar[str] = 'size_bound_only'

    def contains(self, values: np.ndarray) -> np.ndarray:
        return np.ones(values.shape[0], dtype=bool)

    @property
    def claimed_size(self) -> int:
        return self.claimed

    def details(self) -> Dict:
        return {}


@dataclass(frozen=True, eq=False)
class BlockProduct(Certificate):
    """Independent certificates on disjoint coordinate blocks."""

    blocks: Tuple[Tuple[Tuple[int, ...], Certificate], ...]

    kind: ClassVar[str] = 'block_product'

    def contains(self, values: np.ndarray) -> np.ndarray:
        ok = np.ones(values.shape[0], dtype=bool)
        for coords, cert in self.blocks:
            ok &= cert.contains(values[:, list(coords)])
        return ok

    @property
    def claimed_size(self) -> int:
        return math.prod(cert.claimed_size for _, cert in self.blocks)

    def details(self) -> Dict:
        return {'blocks': [{'coords': list(c), 'certificate': cert.to_dict()} for c, cert in self.blocks]}
