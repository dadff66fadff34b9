"""
The assembled map φ on Z_Q, stored per stage.

Stage one lays out one block of coordinates per one-variable expression and
applies that expression's own construction there. A later stage s owns one
block per (case, expression) pair: on the block of case C = (c₀, …, c_{s−1})
the map is θ_j(x′) when x mod Q_{s−1} is the j-th residue c_j of C and 0
otherwise, x′ being x on the block's own coordinates.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from ..construct.result import Construction
from .cases import element_codes

logger = logging.getLogger(__name__)

EXACT_Q_BITS = 64


def small_inverse(a: int, primes: np.ndarray) -> np.ndarray:
    """a⁻¹ mod each prime, for a small positive a coprime to every prime."""
    primes = np.asarray(primes, dtype=np.int64)
    out = np.zeros_like(primes)
    for t in range(a):
        candidate = t * primes + 1
        hit = (candidate % a == 0) & (out == 0)
        out = np.where(hit, candidate // a, out)
    return out


@dataclass(frozen=True, eq=False)
class StagedModulus:
    """
    Coordinates of an assembled build; Q itself is kept only when small.

    stage_ends[s] is one past the last coordinate of stage s + 1.
    """

    primes: np.ndarray
    stage_ends: Tuple[int, ...]

    @property
    def values(self) -> np.ndarray:
        return self.primes

    def __len__(self) -> int:
        return int(self.primes.size)

    @property
    def log2_q(self) -> float:
        return float(np.log2(self.primes.astype(np.float64)).sum())

    @property
    def q(self) -> Optional[int]:
        """Q when it has at most EXACT_Q_BITS bits, else None."""
        if self.log2_q > EXACT_Q_BITS:
            return None
        return math.prod(int(p) for p in self.primes)

    def random_elements(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.integers(0, self.primes, size=(count, len(self)), dtype=np.int64)

    def to_dict(self, head: int = 16) -> Dict[str, Any]:
        q = self.q
        return {
            'coordinates': len(self),
            'stage_ends': list(self.stage_ends),
            'log2_q': round(self.log2_q, 3),
            'q': None if q is None else str(q),
            'first_primes': self.primes[:head].tolist(),
            'max_prime': int(self.primes.max()) if len(self) else None,
        }


@dataclass(frozen=True, eq=False)
class StageOneBlock:
    """A one-variable expression's construction on coordinates [start, stop)."""

    expression_index: int
    start: int
    stop: int
    construction: Construction

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.construction.maps.evaluate(0, x[:, self.start:self.stop])

    def contains(self, value: np.ndarray) -> bool:
        return bool(self.construction.certificate.contains(value[None, self.start:self.stop])[0])

    def reads(self, coordinate: int) -> FrozenSet[int]:
        local = self.construction.maps.maps[0][coordinate - self.start].reads
        return frozenset(self.start + i for i in local)


@dataclass(frozen=True, eq=False)
class CaseStage:
    """
    Blocks of stage `size` for every (case, expression) pair.

    Dispatch reads the `prefix` coordinates before the stage, whose product
    is `prefix_q`. Blocks are laid out case-major from `offset`.
    """

    size: int
    prefix: int
    prefix_q: int
    offset: int
    expression_indices: Tuple[int, ...]
    cases: np.ndarray
    width: int = 1
    _order: np.ndarray = field(default=None, repr=False)
    _sorted: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        flat = self.cases.ravel()
        order = np.argsort(flat, kind='stable')
        object.__setattr__(self, '_order', order)
        object.__setattr__(self, '_sorted', flat[order])

    @property
    def case_count(self) -> int:
        return int(self.cases.shape[0])

    @property
    def coordinates(self) -> int:
        return self.case_count * len(self.expression_indices) * self.width

    @property
    def stop(self) -> int:
        return self.offset + self.coordinates

    def local_index(self, expression_index: int) -> int:
        return self.expression_indices.index(expression_index)

    def block(self, rank: int, local: int) -> Tuple[int, int]:
        start = self.offset + (rank * len(self.expression_indices) + local) * self.width
        return start, start + self.width

    def occurrences(self, code: int) -> Tuple[np.ndarray, np.ndarray]:
        """(case ranks, positions) of every case containing the residue code."""
        lo = np.searchsorted(self._sorted, code, side='left')
        hi = np.searchsorted(self._sorted, code, side='right')
        return np.divmod(self._order[lo:hi], self.size)

    def owner(self, coordinate: int) -> Tuple[int, int]:
        """(case rank, local expression) of a coordinate in this stage."""
        block = (coordinate - self.offset) // self.width
        return divmod(block, len(self.expression_indices))

    def evaluate_into(self, x: np.ndarray, codes: np.ndarray, out: np.ndarray) -> None:
        raise NotImplementedError

    def contains(self, rank: int, local: int, value: np.ndarray) -> bool:
        raise NotImplementedError

    def reads(self, coordinate: int) -> FrozenSet[int]:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class LinearCaseStage(CaseStage):
    """
    One coordinate per (case, expression); θ_j(x) = theta[r, e, j]·x.

    For E = Σ_j a_j α(x_j) + b_j x_j, θ_j = −b_j a_j⁻¹ makes E vanish on the
    case coordinate, so each block certifies the singleton {0}.
    """

    primes: np.ndarray = None
    theta: np.ndarray = None

    def evaluate_into(self, x: np.ndarray, codes: np.ndarray, out: np.ndarray) -> None:
        m = len(self.expression_indices)
        cols = np.arange(m)
        for row in range(x.shape[0]):
            ranks, positions = self.occurrences(int(codes[row]))
            if not ranks.size:
                continue
            coords = self.offset + ranks[:, None] * m + cols[None, :]
            theta = self.theta[ranks[:, None], cols[None, :], positions[:, None]]
            out[row, coords] = theta * x[row, coords] % self.primes[ranks]

    def contains(self, rank: int, local: int, value: np.ndarray) -> bool:
        start, _ = self.block(rank, local)
        return int(value[start]) == 0

    def reads(self, coordinate: int) -> FrozenSet[int]:
        return frozenset(range(self.prefix)) | {coordinate}


@dataclass(frozen=True, eq=False)
class GenericCaseStage(CaseStage):
    """One construction per (case, expression), each over `width` fresh primes."""

    constructions: Tuple[Tuple[Construction, ...], ...] = ()

    def evaluate_into(self, x: np.ndarray, codes: np.ndarray, out: np.ndarray) -> None:
        for row in range(x.shape[0]):
            ranks, positions = self.occurrences(int(codes[row]))
            for rank, j in zip(ranks.tolist(), positions.tolist()):
                for local, built in enumerate(self.constructions[rank]):
                    start, _ = self.block(rank, local)
                    stop = start + len(built.modulus)
                    out[row, start:stop] = built.maps.evaluate(j, x[row:row + 1, start:stop])[0]

    def contains(self, rank: int, local: int, value: np.ndarray) -> bool:
        built = self.constructions[rank][local]
        start, _ = self.block(rank, local)
        return bool(built.certificate.contains(value[None, start:start + len(built.modulus)])[0])

    def reads(self, coordinate: int) -> FrozenSet[int]:
        rank, local = self.owner(coordinate)
        start, _ = self.block(rank, local)
        maps = self.constructions[rank][local].maps
        own = set()
        if coordinate - start < len(maps.modulus):
            for per_coord in maps.maps.values():
                own |= {start + i for i in per_coord[coordinate - start].reads}
        return frozenset(range(self.prefix)) | frozenset(own)


@dataclass(frozen=True, eq=False)
class PhiMap:
    modulus: StagedModulus
    blocks: Tuple[StageOneBlock, ...]
    stages: Tuple[CaseStage, ...]

    def codes(self, x: np.ndarray, prefix: int) -> np.ndarray:
        return element_codes(x[:, :prefix], self.modulus.primes[:prefix].tolist())

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """φ on an (N, n) residue matrix."""
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros_like(x)
        for block in self.blocks:
            out[:, block.start:block.stop] = block.evaluate(x)
        for stage in self.stages:
            stage.evaluate_into(x, self.codes(x, stage.prefix), out)
        return out

    def block_of(self, expression_index: int) -> StageOneBlock:
        for block in self.blocks:
            if block.expression_index == expression_index:
                return block
        raise KeyError(expression_index)

    def stage_of_size(self, size: int) -> CaseStage:
        for stage in self.stages:
            if stage.size == size:
                return stage
        raise KeyError(size)

    def reads(self, coordinate: int) -> FrozenSet[int]:
        """Coordinates of x that φ's value at `coordinate` depends on."""
        for block in self.blocks:
            if block.start <= coordinate < block.stop:
                return block.reads(coordinate)
        for stage in self.stages:
            if stage.offset <= coordinate < stage.stop:
                return stage.reads(coordinate)
        raise IndexError(coordinate)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'modulus': self.modulus.to_dict(),
            'stage_one': [
                {'expression': b.expression_index, 'coordinates': [b.start, b.stop],
                 'tag': b.construction.tag, 'certificate': b.construction.certificate.to_dict()}
                for b in self.blocks
            ],
            'stages': [
                {'size': s.size, 'kind': 'linear' if isinstance(s, LinearCaseStage) else 'generic',
                 'prefix_coordinates': s.prefix, 'prefix_q': str(s.prefix_q),
                 'offset': s.offset, 'cases': s.case_count, 'width': s.width,
                 'expressions': list(s.expression_indices), 'coordinates': s.coordinates}
                for s in self.stages
            ],
        }


def stage_tables(phi: PhiMap) -> List[Tuple[str, np.ndarray]]:
    """Integer arrays worth streaming to sidecar files."""
    tables = [('primes', phi.modulus.primes)]
    for stage in phi.stages:
        tables.append((f'stage{stage.size}_cases', stage.cases))
        if isinstance(stage, LinearCaseStage):
            tables.append((f'stage{stage.size}_theta', stage.theta))
    return tables
