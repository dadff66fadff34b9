"""
Per-coordinate map rules for the constructed α, β, γ.

A variable's map is a tuple of VarMaps, one per prime coordinate. Each
VarMap computes its coordinate from the variable's residues:

    lift part      constant + Σ weight·(table[x_r] or x_r)   reduced mod p
    composed part  values[x_own, selector(x)]                 (optional)

Tables hold integers, so cross-coordinate maps such as mod_{p,q} and the
carry-correcting lookups of the identification constructions are plain
LiftTerms reading another coordinate.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..expr.transform import CancelLinear, Regroup, Rename, Shift, Transform
from ..residue import Modulus, inverse

logger = logging.getLogger(__name__)

TableStore = Callable[[str, np.ndarray], Dict]


def _inline(name: str, table: np.ndarray) -> Dict:
    return {'name': name, 'values': [int(v) for v in table.reshape(-1)], 'shape': list(table.shape)}


@dataclass(frozen=True, eq=False)
class LiftTerm:
    """weight · (table[x_coord] if table is given else x_coord)."""

    coord: int
    weight: int
    table: Optional[np.ndarray] = None

    def raw(self, x: np.ndarray) -> np.ndarray:
        column = x[:, self.coord]
        return column if self.table is None else self.table[column]

    def raw_at(self, residues: Sequence[int]) -> int:
        r = int(residues[self.coord])
        return r if self.table is None else int(self.table[r])


@dataclass(frozen=True, eq=False)
class LiftCombination:
    """Integer-weighted sum of lifted coordinates plus a constant."""

    terms: Tuple[LiftTerm, ...] = ()
    constant: int = 0

    @property
    def reads(self) -> FrozenSet[int]:
        return frozenset(t.coord for t in self.terms)

    def evaluate(self, x: np.ndarray, prime: int) -> np.ndarray:
        total = np.full(x.shape[0], self.constant % prime, dtype=np.int64)
        for t in self.terms:
            total = (total + (t.weight % prime) * np.mod(t.raw(x), prime)) % prime
        return total

    def value_at(self, residues: Sequence[int], prime: int) -> int:
        total = self.constant
        for t in self.terms:
            total += t.weight * t.raw_at(residues)
        return total % prime

    def plus(self, term: LiftTerm) -> 'LiftCombination':
        return LiftCombination(self.terms + (term,), self.constant)


@dataclass(frozen=True, eq=False)
class ComposedTable:
    """values[x_own, selector(x) mod selector_size]; a table indexed by two inputs."""

    own: int
    selector: LiftCombination
    selector_size: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != self.selector_size:
            raise ValueError(f"composed table shape {self.values.shape} does not match selector size {self.selector_size}")

    @property
    def reads(self) -> FrozenSet[int]:
        return self.selector.reads | {self.own}

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.values[x[:, self.own], self.selector.evaluate(x, self.selector_size)]

    def value_at(self, residues: Sequence[int]) -> int:
        return int(self.values[int(residues[self.own]), self.selector.value_at(residues, self.selector_size)])


@dataclass(frozen=True, eq=False)
class VarMap:
    """Coordinate `target` (prime `prime`) of one variable's map."""

    target: int
    prime: int
    lift: LiftCombination = field(default_factory=LiftCombination)
    composed: Optional[ComposedTable] = None

    @property
    def reads(self) -> FrozenSet[int]:
        out = self.lift.reads
        if self.composed is not None:
            out = out | self.composed.reads
        return out

    @property
    def is_zero(self) -> bool:
        return (self.composed is None and self.lift.constant % self.prime == 0
                and all(t.weight % self.prime == 0 for t in self.lift.terms))

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """
        Values on a batch of inputs.

        Args:
            x: (N, n) residue matrix of this variable

        Returns:
            int64 array in [0, prime)
        """
        out = self.lift.evaluate(x, self.prime)
        if self.composed is not None:
            out = (out + self.composed.evaluate(x)) % self.prime
        return out

    def value_at(self, residues: Sequence[int]) -> int:
        out = self.lift.value_at(residues, self.prime)
        if self.composed is not None:
            out = (out + self.composed.value_at(residues)) % self.prime
        return out

    def own_affine(self) -> Optional[Tuple[int, int]]:
        """(c, k) when the map is c·x_target + k, else None."""
        if self.composed is not None:
            return None
        if any(t.coord != self.target or t.table is not None for t in self.lift.terms):
            return None
        c = sum(t.weight for t in self.lift.terms) % self.prime
        return c, self.lift.constant % self.prime

    def shifted(self, a: int) -> 'VarMap':
        """The map + a·x_target."""
        if a % self.prime == 0:
            return self
        return replace(self, lift=self.lift.plus(LiftTerm(self.target, a)))

    def kind(self) -> str:
        if self.is_zero:
            return 'zero'
        if self.own_affine() is not None:
            return 'affine'
        if self.composed is not None:
            return 'composed'
        if all(t.table is not None and t.coord == self.target for t in self.lift.terms):
            return 'table'
        return 'lift_combination'

    def to_dict(self, name: str, store: Optional[TableStore] = None) -> Dict:
        store = store or _inline
        rule: Dict = {'target': self.target, 'prime': self.prime, 'kind': self.kind()}
        affine = self.own_affine()
        if affine is not None:
            rule['coefficient'], rule['constant'] = affine
            return rule
        rule['constant'] = self.lift.constant % self.prime
        rule['terms'] = [
            {'coord': t.coord, 'weight': t.weight,
             'table': None if t.table is None else store(f"{name}_t{k}", t.table)}
            for k, t in enumerate(self.lift.terms)
        ]
        if self.composed is not None:
            c = self.composed
            rule['composed'] = {
                'own': c.own, 'selector_size': c.selector_size,
                'selector': {'constant': c.selector.constant,
                             'terms': [{'coord': t.coord, 'weight': t.weight,
                                        'table': None if t.table is None else store(f"{name}_s{k}", t.table)}
                                       for k, t in enumerate(c.selector.terms)]},
                'values': store(f"{name}_composed", c.values),
            }
        return rule


def zero_map(target: int, prime: int) -> VarMap:
    return VarMap(target, prime)


def affine_map(target: int, prime: int, a: int, b: int) -> VarMap:
    """a·x_target + b."""
    terms = (LiftTerm(target, a % prime),) if a % prime else ()
    return VarMap(target, prime, LiftCombination(terms, b % prime))


def lift_map(target: int, prime: int, terms: Iterable[LiftTerm], constant: int = 0) -> VarMap:
    return VarMap(target, prime, LiftCombination(tuple(terms), constant))


def table_map(target: int, prime: int, table: np.ndarray) -> VarMap:
    """Exhaustive lookup on the own coordinate."""
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (prime,):
        raise ValueError(f"table for coordinate {target} has shape {table.shape}, expected ({prime},)")
    return VarMap(target, prime, LiftCombination((LiftTerm(target, 1, np.mod(table, prime)),)))


@dataclass(frozen=True, eq=False)
class MapSet:
    """Maps of every variable over one modulus."""

    modulus: Modulus
    maps: Dict[int, Tuple[VarMap, ...]]

    def __post_init__(self):
        for v, per_coord in self.maps.items():
            if len(per_coord) != len(self.modulus):
                raise ValueError(f"variable {v} has {len(per_coord)} coordinate maps over {len(self.modulus)} primes")

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted(self.maps))

    def evaluate(self, var: int, x: np.ndarray) -> np.ndarray:
        """(N, n) values of α_var on the (N, n) residue matrix x."""
        return np.stack([m.evaluate(x) for m in self.maps[var]], axis=1)

    def value_at(self, var: int, residues: Sequence[int]) -> Tuple[int, ...]:
        return tuple(m.value_at(residues) for m in self.maps[var])

    def reads(self, var: int) -> FrozenSet[int]:
        out: FrozenSet[int] = frozenset()
        for m in self.maps[var]:
            out = out | m.reads
        return out

    def with_maps(self, maps: Dict[int, Tuple[VarMap, ...]]) -> 'MapSet':
        return MapSet(self.modulus, maps)

    def pullback(self, transform: Transform) -> 'MapSet':
        """
        Maps for E from maps for E' = transform(E).

        Steps are undone last to first; a Shift(a) on α' means α = α' − a·x.
        """
        primes = self.modulus.values
        maps = dict(self.maps)
        for step in reversed(transform.steps):
            if isinstance(step, Rename):
                back = {new: old for old, new in step.mapping}
                maps = {back.get(v, v): m for v, m in maps.items()}
            elif isinstance(step, Shift):
                if step.var in maps:
                    maps[step.var] = tuple(m.shifted(-step.a) for m in maps[step.var])
            elif isinstance(step, CancelLinear):
                maps[step.var] = tuple(
                    affine_map(i, p, -step.mu * inverse(step.lam, p, coordinate=i), 0)
                    for i, p in enumerate(primes)
                )
            elif isinstance(step, Regroup):
                continue
        return MapSet(self.modulus, maps)

    def to_dict(self, store: Optional[TableStore] = None) -> Dict:
        return {
            str(v): [m.to_dict(f"map{v}_c{i}", store) for i, m in enumerate(per_coord)]
            for v, per_coord in sorted(self.maps.items())
        }


def uniform_maps(modulus: Modulus, variables: Iterable[int],
                 build: Callable[[int, int, int], VarMap]) -> Dict[int, Tuple[VarMap, ...]]:
    """build(var, coordinate, prime) for every variable and coordinate."""
    return {v: tuple(build(v, i, p) for i, p in enumerate(modulus.values)) for v in variables}


def stack_maps(blocks: List[MapSet]) -> MapSet:
    """
    Concatenate MapSets over disjoint prime blocks into one MapSet.

    Coordinate indices inside each block's rules are offset accordingly.
    """
    primes: List[int] = []
    offsets: List[int] = []
    for block in blocks:
        offsets.append(len(primes))
        primes.extend(block.modulus.values)
    variables = sorted({v for b in blocks for v in b.maps})
    maps: Dict[int, List[VarMap]] = {v: [] for v in variables}
    for block, off in zip(blocks, offsets):
        for v in variables:
            per_coord = block.maps.get(v) or tuple(zero_map(i, p) for i, p in enumerate(block.modulus.values))
            maps[v].extend(_offset(m, off) for m in per_coord)
    return MapSet(Modulus.of(primes), {v: tuple(m) for v, m in maps.items()})


def _offset_lift(lift: LiftCombination, off: int) -> LiftCombination:
    return LiftCombination(tuple(LiftTerm(t.coord + off, t.weight, t.table) for t in lift.terms), lift.constant)


def _offset(m: VarMap, off: int) -> VarMap:
    composed = None
    if m.composed is not None:
        c = m.composed
        composed = ComposedTable(c.own + off, _offset_lift(c.selector, off), c.selector_size, c.values)
    return VarMap(m.target + off, m.prime, _offset_lift(m.lift, off), composed)
