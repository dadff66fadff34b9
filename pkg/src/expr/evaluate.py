"""
Evaluation of an expression under constructed maps.

`maps` is any object with a `modulus` (prime coordinates) and per-variable
coordinate rules exposing `evaluate(x)` / `value_at(residues)`; in practice
a construct.varmap.MapSet.
"""

from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from ..core.exceptions import ModulusMismatchError
from ..residue import RingElem
from .model import Expression


def evaluate(expr: Expression, maps, points: Mapping[int, np.ndarray]) -> np.ndarray:
    """
    Vectorized evaluation.

    Args:
        expr: Expression over the variables of `maps`
        maps: MapSet-like object
        points: var → (N, n) residue matrix

    Returns:
        (N, n) int64 matrix of values, reduced per coordinate
    """
    primes = maps.modulus.values
    size = next(iter(points.values())).shape[0] if points else 1
    out = np.zeros((size, len(primes)), dtype=np.int64)
    for i, p in enumerate(primes):
        alpha = {v: maps.maps[v][i].evaluate(points[v]) for v in expr.variables}
        xs = {v: np.mod(points[v][:, i], p) for v in expr.variables}
        col = np.zeros(size, dtype=np.int64)
        for t in expr.terms:
            prod = np.full(size, t.coeff % p, dtype=np.int64)
            for a in t.factors:
                prod = prod * ((alpha[a.var] + (a.shift % p) * xs[a.var]) % p) % p
            col = (col + prod) % p
        for lin in expr.linear:
            if lin.var not in alpha:
                continue
            col = (col + (lin.lam % p) * alpha[lin.var] + (lin.mu % p) * xs[lin.var]) % p
        out[:, i] = col
    return out


def evaluate_point(expr: Expression, maps, point: Mapping[int, RingElem]) -> RingElem:
    """
    Value at one assignment of ring elements.

    Raises:
        ModulusMismatchError: If a point lives over another modulus
    """
    for v, elem in point.items():
        if elem.modulus != maps.modulus:
            raise ModulusMismatchError(f"variable {v} is over {elem.modulus.values}, maps over {maps.modulus.values}")
    missing = [v for v in expr.variables if v not in point]
    if missing:
        raise ValueError(f"no value for variables {missing}")
    points = {v: np.array([point[v].residues], dtype=np.int64) for v in expr.variables}
    row = evaluate(expr, maps, points)[0]
    return maps.modulus.element(row.tolist())


def naive_evaluate(expr: Expression, maps, point: Mapping[int, Sequence[int]]) -> Tuple[int, ...]:
    """Pure-Python evaluation, one coordinate at a time."""
    out = []
    for i, p in enumerate(maps.modulus.values):
        total = 0
        alpha: Dict[int, int] = {v: maps.maps[v][i].value_at(point[v]) for v in expr.variables}
        for t in expr.terms:
            prod = t.coeff
            for a in t.factors:
                prod *= alpha[a.var] + a.shift * point[a.var][i]
            total += prod
        for lin in expr.linear:
            if lin.var in alpha:
                total += lin.lam * alpha[lin.var] + lin.mu * point[lin.var][i]
        out.append(total % p)
    return tuple(out)
