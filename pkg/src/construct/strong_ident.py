"""
Identification of coordinates with an exact carry ledger.

Each coordinate i may have an owner variable whose map there is left free;
every other variable has a fixed rule. Expanding coordinate i symbolically
splits it into

    P_i(α_owner; x_owner,i)         the owner polynomial
    pieces (v, r)                    data of one other variable read at one coordinate
    cross_i                          products of data of several other variables

A piece in coordinate i is subtracted again inside its variable's owner
coordinate, so the owner's map solves P(t) + K ≡ small with K the integer
sum of that variable's pieces. Summing the lifts of all coordinates, the
pieces telescope and

    Σ_i ι(E_i) = Σ_i s̃_i + Σ_i ι(cross_i) + Σ_i n_i·p_i

with s̃_i the centered small values and n_i from a bounded carry range. The
certificate is this functional reduced mod a reference prime.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..core.exceptions import BudgetExceededError, PreconditionError
from ..expr.footprint import CoordinatePolynomial, DataSymbol, coordinate_polynomial, free_symbol, lift_symbol
from ..expr.model import Expression
from ..residue import Modulus, centered_array, inverse
from .certificate import LinearFunctionalMembership
from .small_values import small_value_bound, small_value_table
from .varmap import ComposedTable, LiftCombination, LiftTerm, MapSet, VarMap, zero_map

logger = logging.getLogger(__name__)


@dataclass
class Piece:
    """Integer table over Z_{p_read}, values in [0, p_coordinate)."""

    coordinate: int
    var: int
    read: int
    table: np.ndarray


@dataclass
class CoordinateSplit:
    coordinate: int
    prime: int
    owner: Optional[int]
    owner_coeffs: Dict[int, np.ndarray]
    pieces: List[Piece]
    cross: List[Tuple[Tuple[int, ...], int]]
    poly: CoordinatePolynomial


@dataclass
class IdentificationResult:
    maps: MapSet
    certificate: LinearFunctionalMembership
    measurements: Dict = field(default_factory=dict)
    cross_values: Optional[np.ndarray] = None


class _PartialMaps:
    """MapSet-like view where rules are looked up by (var, coordinate)."""

    def __init__(self, modulus: Modulus, rules: Mapping[int, Mapping[int, VarMap]]):
        self.modulus = modulus
        self.maps = rules


def _symbol_values(d: DataSymbol, symbol: sympy.Symbol, points: Mapping[int, np.ndarray]) -> np.ndarray:
    x = points[d.var]
    if d.kind == 'lift':
        return x[:, d.coord]
    if d.kind == 'table':
        return d.term.table[x[:, d.coord]]
    if d.kind == 'composed':
        return d.term.evaluate(x)
    raise ValueError(f"symbol {symbol} has no data value")


def evaluate_monomials(poly: CoordinatePolynomial, monomials: Sequence[Tuple[Tuple[int, ...], int]],
                       points: Mapping[int, np.ndarray], size: int) -> np.ndarray:
    """Σ coeff·Π symbol^e mod p over a batch; every symbol must be data."""
    p = poly.prime
    total = np.zeros(size, dtype=np.int64)
    cache: Dict[sympy.Symbol, np.ndarray] = {}
    for monomial, coeff in monomials:
        acc = np.full(size, coeff % p, dtype=np.int64)
        for g, e in zip(poly.gens, monomial):
            if not e:
                continue
            if g not in cache:
                cache[g] = np.mod(_symbol_values(poly.info[g], g, points), p)
            for _ in range(e):
                acc = acc * cache[g] % p
        total = (total + acc) % p
    return total


def _split(poly: CoordinatePolynomial, owner: Optional[int], modulus: Modulus) -> CoordinateSplit:
    i, p = poly.coordinate, poly.prime
    owner_terms: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    piece_terms: Dict[Tuple[int, int], List[Tuple[Tuple[int, ...], int]]] = defaultdict(list)
    cross: List[Tuple[Tuple[int, ...], int]] = []
    t_sym = free_symbol(owner) if owner is not None else None
    x_sym = lift_symbol(owner, i) if owner is not None else None

    for monomial, coeff in poly.terms.items():
        syms = poly.symbols_of(monomial)
        variables = {poly.info[s].var for s in syms}
        if not syms or variables == {owner}:
            powers = dict(zip(poly.gens, monomial))
            extra = [s for s in syms if s not in (t_sym, x_sym)]
            if extra:
                raise PreconditionError(f"owner data {extra} at coordinate {i} is not separable")
            owner_terms[powers.get(t_sym, 0)].append((powers.get(x_sym, 0), coeff))
        elif owner in variables:
            raise PreconditionError(f"owner map at coordinate {i} multiplies another variable's data")
        elif len(variables) == 1:
            reads = set()
            for s in syms:
                reads |= poly.info[s].reads
            if len(reads) == 1:
                piece_terms[(variables.pop(), reads.pop())].append((monomial, coeff))
            else:
                cross.append((monomial, coeff))
        else:
            cross.append((monomial, coeff))

    xs = np.arange(p, dtype=np.int64)
    owner_coeffs: Dict[int, np.ndarray] = {}
    for power, entries in owner_terms.items():
        acc = np.zeros(p, dtype=np.int64)
        for e, c in entries:
            acc = (acc + c * pow_mod_array(xs, e, p)) % p
        owner_coeffs[power] = acc

    pieces = []
    for (v, r), monomials in sorted(piece_terms.items()):
        pr = modulus[r]
        x = np.zeros((pr, len(modulus)), dtype=np.int64)
        x[:, r] = np.arange(pr)
        table = evaluate_monomials(poly, monomials, {v: x}, pr)
        if table.any():
            pieces.append(Piece(i, v, r, table))
    return CoordinateSplit(i, p, owner, owner_coeffs, pieces, cross, poly)


def pow_mod_array(x: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(x)
    for _ in range(e):
        out = out * x % p
    return out


def _diagonal(split: CoordinateSplit, owned_pieces: List[Piece], modulus: Modulus) -> Tuple[VarMap, int, int, int]:
    """
    The owner's map at its coordinate, the centered range [lo, hi] of s and
    the degree of the owner polynomial.
    """
    i, p = split.coordinate, split.prime
    coeffs = split.owner_coeffs
    degree = max((j for j, c in coeffs.items() if c.any()), default=0)
    k_terms = tuple(LiftTerm(pc.read, 1, pc.table) for pc in owned_pieces)

    if degree == 0:
        if owned_pieces:
            raise PreconditionError(f"owner map vanishes at coordinate {i} but its pieces need absorbing")
        c0 = coeffs.get(0, np.zeros(p, dtype=np.int64))
        if np.unique(c0).size > 1:
            raise PreconditionError(f"coordinate {i} depends on its owner only through x")
        s = int(centered_array(c0[:1], p)[0])
        return zero_map(i, p), s, s, 0

    lead = coeffs[degree]
    if np.unique(lead).size != 1:
        raise PreconditionError(f"leading owner coefficient at coordinate {i} depends on x")
    c = int(lead[0])
    c0 = coeffs.get(0, np.zeros(p, dtype=np.int64))

    if degree == 1:
        scale = -inverse(c, p, i) % p
        terms = tuple(LiftTerm(t.coord, scale, t.table) for t in k_terms)
        if np.unique(c0).size == 1:
            rule = VarMap(i, p, LiftCombination(terms, scale * int(c0[0]) % p))
        else:
            rule = VarMap(i, p, LiftCombination((LiftTerm(i, scale, c0),) + terms, 0))
        return rule, 0, 0, 1

    # degree ≥ 2: argmin over (x_own, k)
    xs = np.repeat(np.arange(p), p)
    ks = np.tile(np.arange(p), p)
    table = np.zeros((degree + 1, p * p), dtype=np.int64)
    for j in range(degree + 1):
        col = coeffs.get(j, np.zeros(p, dtype=np.int64))
        table[j] = col[xs]
    table[0] = (table[0] + ks) % p
    t, achieved = small_value_table(table, p)
    values = t.reshape(p, p)
    rule = VarMap(i, p, LiftCombination(), ComposedTable(i, LiftCombination(k_terms), p, values))
    return rule, int(achieved.min()), int(achieved.max()), degree


def _cyclic_sumset(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    for shift in np.nonzero(b)[0]:
        out |= np.roll(a, int(shift))
    return out


def _cross_values(splits: List[CoordinateSplit], modulus: Modulus, reference: int,
                  limit: int) -> Tuple[np.ndarray, int]:
    """Σ_i ι(cross_i) mod reference over the joint domain of the cross data."""
    pairs = set()
    for sp in splits:
        for monomial, _ in sp.cross:
            for s in sp.poly.symbols_of(monomial):
                d = sp.poly.info[s]
                pairs.update((d.var, r) for r in d.reads)
    if not pairs:
        return np.zeros(1, dtype=np.int64), 1
    pairs = sorted(pairs)
    domain = math.prod(modulus[r] for _, r in pairs)
    if domain > limit:
        raise BudgetExceededError(domain, limit)

    grids = np.meshgrid(*[np.arange(modulus[r]) for _, r in pairs], indexing='ij')
    size = grids[0].size
    points: Dict[int, np.ndarray] = {}
    for (v, r), grid in zip(pairs, grids):
        points.setdefault(v, np.zeros((size, len(modulus)), dtype=np.int64))
        points[v][:, r] = grid.reshape(-1)
    total = np.zeros(size, dtype=np.int64)
    for sp in splits:
        if sp.cross:
            total += evaluate_monomials(sp.poly, sp.cross, points, size)
    return np.unique(total % reference), domain


def identify(expr: Expression, modulus: Modulus, owners: Mapping[int, int],
             fixed: Mapping[int, Mapping[int, VarMap]], reference: int,
             joint_limit: int = 10 ** 7, constant_c: Optional[float] = None) -> IdentificationResult:
    """
    Diagonal maps and carry-ledger certificate.

    Args:
        expr: Normalized expression
        modulus: Coordinates
        owners: coordinate → variable left free there
        fixed: var → coordinate → rule, for every non-owner (var, coordinate)
        reference: Index of the reference prime
        joint_limit: Largest joint domain enumerated for cross terms
        constant_c: C'; a degree-d owner coordinate over p must reach a small value
            within C'·p^(1−2^(−d)) (unchecked when None)

    Raises:
        PreconditionError: If a coordinate does not separate or its small values
            exceed the C' bound
        BudgetExceededError: If the cross terms read too large a joint domain
    """
    variables = expr.variables
    n = len(modulus)
    splits: List[CoordinateSplit] = []
    for i in range(n):
        owner = owners.get(i)
        rules = {v: fixed.get(v, {}) for v in variables if v != owner}
        missing = [v for v, r in rules.items() if i not in r]
        if missing:
            raise PreconditionError(f"no rule for variables {missing} at coordinate {i}")
        partial = _PartialMaps(modulus, rules)
        poly = coordinate_polynomial(expr, partial, i, free=[owner] if owner is not None else [])
        splits.append(_split(poly, owner, modulus))

    owned_coordinate = {v: i for i, v in owners.items()}
    by_var: Dict[int, List[Piece]] = defaultdict(list)
    for sp in splits:
        for pc in sp.pieces:
            if pc.var not in owned_coordinate:
                raise PreconditionError(f"variable {pc.var} has pieces but owns no coordinate")
            by_var[pc.var].append(pc)

    maps: Dict[int, List[VarMap]] = {v: [None] * n for v in variables}
    for v in variables:
        for i, rule in fixed.get(v, {}).items():
            maps[v][i] = rule
    s_lo, s_hi, carries, ledger = 0, 0, [], []
    for sp in splits:
        i, p = sp.coordinate, sp.prime
        minus = [pc for pc in by_var.get(sp.owner, []) if pc.coordinate != i] if sp.owner is not None else []
        bound = None
        if sp.owner is not None:
            rule, lo, hi, degree = _diagonal(sp, minus, modulus)
            maps[sp.owner][i] = rule
            if degree >= 2 and constant_c is not None:
                bound = small_value_bound(degree, p, constant_c)
                reached = max(-lo, hi)
                if reached > bound:
                    raise PreconditionError(
                        f"coordinate {i}: small values reach {reached}, above C'·p^(1−2^(−{degree})) = {bound:.2f}")
        else:
            c0 = sp.owner_coeffs.get(0, np.zeros(1, dtype=np.int64))
            lo = hi = int(centered_array(c0[:1], p)[0])
        plus_max = len(sp.pieces) * (p - 1) + (p - 1 if sp.cross else 0)
        minus_max = sum(modulus[pc.coordinate] - 1 for pc in minus)
        t_min, t_max = lo - minus_max, hi + plus_max
        n_lo, n_hi = -(t_max // p), (p - 1 - t_min) // p
        carries.append((p, n_lo, n_hi))
        s_lo, s_hi = s_lo + lo, s_hi + hi
        ledger.append({'coordinate': i, 'prime': p, 'owner': sp.owner, 'small_range': [lo, hi],
                       'pieces': len(sp.pieces), 'absorbed': len(minus), 'cross_terms': len(sp.cross),
                       'carry_range': [n_lo, n_hi],
                       'small_bound': bound})
        logger.debug(f"coordinate {i}: owner {sp.owner}, s ∈ [{lo}, {hi}], carries [{n_lo}, {n_hi}]")

    ref = modulus[reference]
    allowed = np.zeros(ref, dtype=bool)
    allowed[np.arange(s_lo, s_hi + 1) % ref] = True
    for p, n_lo, n_hi in carries:
        steps = np.zeros(ref, dtype=bool)
        steps[(np.arange(n_lo, n_hi + 1) * p) % ref] = True
        allowed = _cyclic_sumset(allowed, steps)
    cross, cross_domain = _cross_values(splits, modulus, ref, joint_limit)
    cross_mask = np.zeros(ref, dtype=bool)
    cross_mask[cross] = True
    allowed = _cyclic_sumset(allowed, cross_mask)

    for v in variables:
        for i in range(n):
            if maps[v][i] is None:
                raise PreconditionError(f"variable {v} has no rule at coordinate {i}")
    certificate = LinearFunctionalMembership(modulus.values, (1,) * n, allowed, reference=ref)
    measurements = {
        'reference_prime': ref, 'small_range': [s_lo, s_hi], 'ledger': ledger,
        'small_bound_total': sum(e['small_bound'] for e in ledger if e['small_bound'] is not None),
        'cross_set_size': int(cross.size), 'cross_domain': cross_domain,
        'allowed_count': int(allowed.sum()),
    }
    logger.info(f"identification over {modulus.values}: {int(allowed.sum())}/{ref} allowed residues, "
                f"cross set {cross.size}")
    return IdentificationResult(MapSet(modulus, {v: tuple(m) for v, m in maps.items()}),
                                certificate, measurements, cross)
