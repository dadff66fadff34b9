"""
Symbolic per-coordinate analysis of an expression under constructed maps.

Each coordinate's value is expanded as a polynomial in data symbols:

    x{v}_{r}     the lift of x_v's residue at coordinate r
    d{v}_{i}_{k} the k-th table term of α_v's rule at coordinate i
    c{v}_{i}     the composed-table part of α_v's rule at coordinate i
    t{v}         α_v at the coordinate itself, for variables left free

Coefficients are reduced mod the coordinate's prime, so terms the
construction cancels disappear and the footprint is the exact set of
(variable, coordinate) residues the value depends on.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import sympy

from .model import Expression

Pair = Tuple[int, int]


@dataclass(frozen=True)
class DataSymbol:
    """What a symbol stands for: a lift, a table term, a composed table or a free map value."""

    var: int
    kind: str
    reads: FrozenSet[int]
    coord: int = -1
    term: Optional[object] = None


@dataclass
class CoordinatePolynomial:
    """Coordinate i of an expression as {monomial exponents: coefficient mod p}."""

    coordinate: int
    prime: int
    gens: Tuple[sympy.Symbol, ...]
    terms: Dict[Tuple[int, ...], int]
    info: Dict[sympy.Symbol, DataSymbol]

    def symbols_of(self, monomial: Tuple[int, ...]) -> List[sympy.Symbol]:
        return [g for g, e in zip(self.gens, monomial) if e]

    def reads(self) -> FrozenSet[Pair]:
        out = set()
        for monomial in self.terms:
            for s in self.symbols_of(monomial):
                d = self.info[s]
                if d.kind != 'free':
                    out.update((d.var, r) for r in d.reads)
        return frozenset(out)

    def as_expr(self, monomials: Optional[Iterable[Tuple[int, ...]]] = None) -> sympy.Expr:
        chosen = self.terms if monomials is None else {m: self.terms[m] for m in monomials}
        total = sympy.Integer(0)
        for monomial, coeff in chosen.items():
            total += coeff * sympy.Mul(*[g ** e for g, e in zip(self.gens, monomial)])
        return total


def lift_symbol(var: int, coord: int) -> sympy.Symbol:
    return sympy.Symbol(f'x{var}_{coord}')


def free_symbol(var: int) -> sympy.Symbol:
    return sympy.Symbol(f't{var}')


def _map_symbolic(var: int, rule, info: Dict[sympy.Symbol, DataSymbol]) -> sympy.Expr:
    i = rule.target
    value = sympy.Integer(rule.lift.constant)
    for k, term in enumerate(rule.lift.terms):
        if term.table is None:
            s = lift_symbol(var, term.coord)
            info.setdefault(s, DataSymbol(var, 'lift', frozenset({term.coord}), term.coord))
        else:
            s = sympy.Symbol(f'd{var}_{i}_{k}')
            info[s] = DataSymbol(var, 'table', frozenset({term.coord}), term.coord, term)
        value += term.weight * s
    if rule.composed is not None:
        s = sympy.Symbol(f'c{var}_{i}')
        info[s] = DataSymbol(var, 'composed', frozenset(rule.composed.reads), i, rule.composed)
        value += s
    return value


def coordinate_polynomial(expr: Expression, maps, coordinate: int,
                          free: Iterable[int] = ()) -> CoordinatePolynomial:
    """
    Expand coordinate `coordinate` of `expr` symbolically.

    Args:
        expr: The expression
        maps: MapSet-like object; variables listed in `free` need no rule
        coordinate: Coordinate index
        free: Variables whose map value stays a free symbol t{v}
    """
    free = set(free)
    p = maps.modulus.values[coordinate]
    info: Dict[sympy.Symbol, DataSymbol] = {}
    alpha: Dict[int, sympy.Expr] = {}
    xs: Dict[int, sympy.Expr] = {}
    for v in expr.variables:
        x = lift_symbol(v, coordinate)
        info.setdefault(x, DataSymbol(v, 'lift', frozenset({coordinate}), coordinate))
        xs[v] = x
        if v in free:
            t = free_symbol(v)
            info[t] = DataSymbol(v, 'free', frozenset(), coordinate)
            alpha[v] = t
        else:
            alpha[v] = _map_symbolic(v, maps.maps[v][coordinate], info)

    total = sympy.expand(expr.to_sympy(alpha, xs))
    gens = tuple(sorted(total.free_symbols, key=lambda s: s.name))
    terms: Dict[Tuple[int, ...], int] = {}
    if gens:
        for monomial, coeff in sympy.Poly(total, *gens).terms():
            c = int(coeff) % p
            if c:
                terms[tuple(monomial)] = c
    elif int(total) % p:
        terms[()] = int(total) % p
    used = {s for m in terms for s, e in zip(gens, m) if e}
    return CoordinatePolynomial(coordinate, p, gens, terms, {s: d for s, d in info.items() if s in used})


def dependency_footprint(expr: Expression, maps) -> Dict[int, FrozenSet[Pair]]:
    """
    Per coordinate, the (variable, coordinate) residues its value reads.

    Exact: a pair is listed iff some surviving monomial mentions it.
    """
    return {i: coordinate_polynomial(expr, maps, i).reads() for i in range(len(maps.modulus))}


def reduced_domain(footprint: Dict[int, FrozenSet[Pair]]) -> Tuple[Pair, ...]:
    """Union of all read pairs, sorted."""
    out = set()
    for pairs in footprint.values():
        out |= pairs
    return tuple(sorted(out))
