"""
Square-free moduli as ordered prime lists, and ring elements over them.

Z_q is always handled as the direct sum of its prime coordinates; q itself
is only materialized for reporting.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..core.exceptions import ModulusMismatchError
from .maps import crt_combine, crt_split, inverse
from .primes import Prime, as_primes, check_exceeds


@dataclass(frozen=True)
class Modulus:
    """Ordered list of distinct primes; q is their product."""

    primes: Tuple[Prime, ...]
    q: int = field(init=False)

    def __post_init__(self):
        primes = as_primes(int(p) for p in self.primes)
        object.__setattr__(self, 'primes', primes)
        object.__setattr__(self, 'q', math.prod(p.value for p in primes))

    @classmethod
    def of(cls, values: Iterable[int], coefficients: Iterable[int] = ()) -> 'Modulus':
        """Build from integers, checking every prime exceeds the coefficients."""
        modulus = cls(tuple(Prime(int(v)) for v in values))
        check_exceeds(modulus.values, coefficients)
        return modulus

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(p.value for p in self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __getitem__(self, i: int) -> int:
        return self.primes[i].value

    def element(self, residues: Sequence[int]) -> 'RingElem':
        return RingElem(self, tuple(int(r) % p for r, p in zip(residues, self.values)))

    def from_int(self, z: int) -> 'RingElem':
        return RingElem(self, tuple(crt_split(z, self.values)))

    def zero(self) -> 'RingElem':
        return RingElem(self, (0,) * len(self))

    def one(self) -> 'RingElem':
        return RingElem(self, (1,) * len(self))

    def random_elements(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Uniform samples as a (count, n) residue matrix."""
        return np.stack([rng.integers(0, p, size=count, dtype=np.int64) for p in self.values], axis=1)

    def to_dict(self) -> Dict:
        return {'primes': list(self.values), 'q': str(self.q)}


@dataclass(frozen=True)
class RingElem:
    """One residue per prime coordinate of its modulus."""

    modulus: Modulus
    residues: Tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.modulus):
            raise ModulusMismatchError(
                f"{len(self.residues)} residues for a modulus with {len(self.modulus)} primes"
            )
        for r, p in zip(self.residues, self.modulus.values):
            if not 0 <= r < p:
                raise ValueError(f"residue {r} is not reduced mod {p}")

    def _check(self, other: 'RingElem') -> None:
        if not isinstance(other, RingElem) or other.modulus != self.modulus:
            raise ModulusMismatchError("ring operands have different moduli")

    def _zip(self, other: 'RingElem', op) -> 'RingElem':
        self._check(other)
        return RingElem(self.modulus, tuple(
            op(a, b) % p for a, b, p in zip(self.residues, other.residues, self.modulus.values)
        ))

    def __add__(self, other: 'RingElem') -> 'RingElem':
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: 'RingElem') -> 'RingElem':
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other: 'RingElem') -> 'RingElem':
        return self._zip(other, lambda a, b: a * b)

    def __neg__(self) -> 'RingElem':
        return RingElem(self.modulus, tuple((-a) % p for a, p in zip(self.residues, self.modulus.values)))

    def inverse(self) -> 'RingElem':
        """Coordinatewise inverse; reports the first zero coordinate."""
        return RingElem(self.modulus, tuple(
            inverse(a, p, coordinate=i)
            for i, (a, p) in enumerate(zip(self.residues, self.modulus.values))
        ))

    def to_int(self) -> int:
        return crt_combine(self.residues, self.modulus.values)

    def to_list(self) -> List[int]:
        return list(self.residues)
