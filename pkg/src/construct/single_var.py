"""
Single-variable expressions: Σ f_j(x)·α(x)^j with integer polynomials f_j.

Over each prime the avoidance scan keeps the value out of the initial segment
F = {0, 1, …, m−1}, m = ⌈p/d⌉ − 1, except at the at most D inputs where
f₁..f_d all vanish. A linear expression with a constant α-coefficient is
solved exactly instead.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..core.exceptions import PreconditionError, PrimeError
from ..expr.model import Expression, alpha_symbol, x_symbol
from ..residue import Modulus, inverse
from .avoidance import choose_alpha_avoiding, polynomial_values
from .certificate import ExactValueSet, PerCoordinateSet
from .varmap import MapSet, VarMap, affine_map, table_map

logger = logging.getLogger(__name__)


def alpha_coefficients(expr: Expression, var: int = 0) -> List[sympy.Poly]:
    """f₀, f₁, …, f_d as polynomials in x_var."""
    a, x = alpha_symbol(var), x_symbol(var)
    poly = sympy.Poly(expr.to_sympy(), a)
    d = poly.degree()
    coeffs = [sympy.Poly(poly.coeff_monomial(a ** j), x) for j in range(d + 1)]
    return coeffs


def coefficient_tables(coeffs: Sequence[sympy.Poly], p: int) -> np.ndarray:
    """(d+1, p) array of f_j(x) mod p over x ∈ Z_p."""
    xs = np.arange(p, dtype=np.int64)
    out = np.zeros((len(coeffs), p), dtype=np.int64)
    for j, f in enumerate(coeffs):
        acc = np.zeros(p, dtype=np.int64)
        for c in f.all_coeffs():
            acc = (acc * xs + int(c)) % p
        out[j] = acc
    return out


def coordinates_needed(d: int, epsilon: Fraction) -> int:
    """Smallest t with (1 − 1/(2d))^t < ε."""
    ratio = Fraction(2 * d - 1, 2 * d)
    t, density = 0, Fraction(1)
    while density >= epsilon:
        t += 1
        density *= ratio
    return t


def avoidance_segment(p: int, d: int) -> List[int]:
    m = math.ceil(p / d) - 1
    return list(range(m))


def single_var_construct(expr: Expression, primes: Sequence[int],
                         epsilon: Optional[Fraction] = None) -> Tuple[Modulus, MapSet, object, dict]:
    """
    Maps for a one-variable expression (variable 0).

    Args:
        expr: Expression in variable 0 only
        primes: Candidate primes, used in order
        epsilon: Target density; all given primes are used when None

    Returns:
        (modulus, maps, certificate, measurements)

    Raises:
        PreconditionError: If α does not occur
        PrimeError: If too few primes are given or some prime is too small
    """
    if expr.variables != (0,):
        raise PreconditionError(f"expected a single variable 0, got {expr.variables}")
    coeffs = alpha_coefficients(expr)
    d = len(coeffs) - 1
    if d == 0 or all(f.is_zero for f in coeffs[1:]):
        raise PreconditionError("α does not occur in the expression")

    if d == 1 and coeffs[1].degree() == 0:
        lead = int(coeffs[1].LC())
        p = int(primes[0])
        if lead % p == 0:
            raise PrimeError(f"prime {p} divides the α coefficient {lead}")
        modulus = Modulus.of([p], expr.coefficients())
        # α = −c⁻¹·f₀(x)
        table = (-inverse(lead, p) * coefficient_tables(coeffs[:1], p)[0]) % p
        f0 = coeffs[0]
        if f0.degree() <= 1:
            slope = int(f0.coeff_monomial(x_symbol(0))) if f0.degree() == 1 else 0
            const = int(f0.coeff_monomial(1))
            rule: VarMap = affine_map(0, p, -inverse(lead, p) * slope, -inverse(lead, p) * const)
        else:
            rule = table_map(0, p, table)
        certificate = ExactValueSet(modulus.values, np.zeros((1, 1), dtype=np.int64))
        logger.info(f"single variable, exact linear solution over {p}")
        return modulus, MapSet(modulus, {0: (rule,)}), certificate, {'exact': True, 'degree': 1}

    D = max(f.degree() for f in coeffs if not f.is_zero)
    magnitudes = [int(c) for f in coeffs for c in f.all_coeffs()]
    t = len(primes) if epsilon is None else coordinates_needed(d, Fraction(epsilon))
    if t > len(primes):
        raise PrimeError(f"need {t} primes for ε = {epsilon}, only {len(primes)} given")
    chosen = [int(p) for p in primes[:t]]
    for p in chosen:
        if p <= 2 * d * (D + 1):
            raise PrimeError(f"prime {p} does not exceed 2d(D+1) = {2 * d * (D + 1)}")
    modulus = Modulus.of(chosen, magnitudes)

    rules, allowed, measured = [], [], []
    for i, p in enumerate(chosen):
        tables = coefficient_tables(coeffs, p)
        forbidden = avoidance_segment(p, d)
        alpha = choose_alpha_avoiding(p, d, tables, forbidden)
        values = polynomial_values(tables, p)[alpha, np.arange(p)]
        mask = np.ones(p, dtype=bool)
        mask[forbidden] = False
        degenerate = ~np.any(tables[1:] != 0, axis=0)
        mask[values[degenerate]] = True
        rules.append(table_map(i, p, alpha))
        allowed.append(mask)
        measured.append(int(np.unique(values).size))
        logger.debug(f"coordinate {i} (p={p}): {int(mask.sum())} allowed, {measured[-1]} attained")

    certificate = PerCoordinateSet(modulus.values, tuple(allowed))
    measurements = {'degree': d, 'x_degree': D, 'coordinates': t,
                    'measured_per_coordinate': measured,
                    'bound': str(Fraction(2 * d - 1, 2 * d) ** t)}
    logger.info(f"single variable degree {d}: {t} coordinates, claimed {certificate.claimed_size}")
    return modulus, MapSet(modulus, {0: tuple(rules)}), certificate, measurements
