"""
Expressions with no mixed terms: f₁(α₁, x₁) + … + f_n(α_n, x_n).

Each block on its own takes a small centered value at every coordinate; a
block linear in α with a constant coefficient is solved exactly to 0.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..core.exceptions import ConstructionError, PreconditionError
from ..expr.model import Expression
from ..residue import Modulus, inverse
from .certificate import Certificate, ExactValueSet, PerCoordinateSet
from .single_var import alpha_coefficients, coefficient_tables
from .small_values import small_value_bound, small_value_table
from .varmap import MapSet, VarMap, table_map

logger = logging.getLogger(__name__)


def _block_maps(expr: Expression, v: int, p: int, target: int, constant_c: float) -> Tuple[VarMap, int, int]:
    """x_v's map at one coordinate, with the block's bound N and the measured worst value."""
    coeffs = alpha_coefficients(expr.restricted_to([v]), v)
    d = len(coeffs) - 1
    tables = coefficient_tables(coeffs, p)
    if d == 0 or not tables[1:].any():
        raise PreconditionError(f"block of x{v} does not involve its map")
    if d == 1 and np.unique(tables[1]).size == 1:
        alpha = (-inverse(int(tables[1][0]), p) * tables[0]) % p
        return table_map(target, p, alpha), 0, 0
    if np.unique(tables[d]).size != 1:
        raise PreconditionError(f"leading coefficient of the x{v} block depends on x")
    alpha, achieved = small_value_table(tables, p)
    n_bound = math.floor(small_value_bound(d, p, constant_c))
    worst = int(np.abs(achieved).max())
    if worst > n_bound:
        raise ConstructionError(f"block of x{v} reaches {worst} > {n_bound} over {p}")
    return table_map(target, p, alpha), n_bound, worst


def split_single_vars(expr: Expression, primes: Sequence[int],
                      constant_c: float = 4.0) -> Tuple[Modulus, MapSet, Certificate, Dict]:
    """
    Per-variable small values over every prime given.

    Coordinate i claims ±Σ_v N_{v,i} with N_{v,i} = ⌊C_d·p_i^(1−2^(−d))⌋ for
    the degree d of x_v's block.

    Raises:
        PreconditionError: If a mixed term is present or some block has no α
        ConstructionError: If a measured block value exceeds C_d·p^(1−2^(−d))
    """
    if expr.mixed_terms:
        raise PreconditionError("blocks are not separable")
    chosen = [int(p) for p in primes]
    modulus = Modulus.of(chosen, expr.coefficients())

    rules: Dict[int, List[VarMap]] = {v: [] for v in expr.variables}
    limits, measured = [], []
    for i, p in enumerate(chosen):
        bounds, worst = {}, {}
        for v in expr.variables:
            rule, bounds[v], worst[v] = _block_maps(expr, v, p, i, constant_c)
            rules[v].append(rule)
        limits.append(bounds)
        measured.append(worst)
        logger.debug(f"coordinate {i} (p={p}): values within ±{sum(bounds.values())}")

    totals = [sum(bounds.values()) for bounds in limits]
    if len(chosen) == 1:
        certificate: Certificate = ExactValueSet.from_integers(modulus.values, range(-totals[0], totals[0] + 1))
    else:
        masks = []
        for p, total in zip(chosen, totals):
            mask = np.zeros(p, dtype=bool)
            mask[np.arange(-total, total + 1) % p] = True
            masks.append(mask)
        certificate = PerCoordinateSet(modulus.values, tuple(masks))
    logger.info(f"separable blocks over {chosen}: values within ±{totals}")
    measurements = {
        'bounds': [list(b.values()) for b in limits],
        'measured': [list(w.values()) for w in measured],
        'coordinate_totals': totals,
    }
    return modulus, MapSet(modulus, {v: tuple(r) for v, r in rules.items()}), certificate, measurements
