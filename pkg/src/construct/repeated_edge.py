"""
A repeated edge on (x, y) next to an isolated quadratic block in z.

The edge block is made constant by affine maps; γ(z) takes the smallest
centered value of γ² + ((c₅+c₆)z + λ₃)γ + c₅c₆z² + μ₃z for each z.
"""

import logging
from typing import Dict, Sequence, Tuple

import numpy as np

from ..core.exceptions import PreconditionError
from ..expr.graph import edge_groups
from ..expr.model import Expression
from ..residue import Modulus
from .affine import AffineSolution, affine_solve, solve_bilinear_block
from .certificate import Certificate, ExactValueSet
from .small_values import small_value_bound, small_value_table
from .varmap import MapSet, affine_map, table_map

logger = logging.getLogger(__name__)


def edge_block_solution(expr: Expression, params: Dict[str, int], p: int) -> AffineSolution:
    """Affine maps for the (0, 1) block; the normalized two-term form uses the closed formulas."""
    lam1, mu1 = params.get('lam1', 0), params.get('mu1', 0)
    lam2, mu2 = params.get('lam2', 0), params.get('mu2', 0)
    if 'nu1' in params and 'nu2' in params:
        return affine_solve(params['nu1'], params['nu2'], lam1, lam2, mu1, mu2, p)
    group = next((g for g in edge_groups(expr) if (g.u, g.v) == (0, 1)), None)
    if group is None:
        raise PreconditionError("no mixed terms on (x, y)")
    return solve_bilinear_block(group.terms, lam1, mu1, lam2, mu2, p)


def polynomial_block(c5: int, c6: int, lam3: int, mu3: int, p: int) -> np.ndarray:
    """(3, p) coefficients in γ of the z block, one column per z."""
    z = np.arange(p, dtype=np.int64)
    coeffs = np.zeros((3, p), dtype=np.int64)
    coeffs[0] = np.mod(c5 * c6 % p * (z * z % p) + mu3 * z, p)
    coeffs[1] = np.mod((c5 + c6) * z + lam3, p)
    coeffs[2] = 1
    return coeffs


def repeated_edge_plus_isolated(expr: Expression, params: Dict[str, int], primes: Sequence[int],
                                constant_c: float = 4.0) -> Tuple[Modulus, MapSet, Certificate, Dict]:
    """
    Maps over the first prime given.

    Args:
        expr: Normalized expression on variables 0, 1 (edge) and 2 (block)
        params: c5, c6, the linear part and, for the two-term form, nu1/nu2
        primes: The first is used
        constant_c: C₂ of the small-value bound

    Raises:
        PreconditionError: If the edge block factorizes mod p
    """
    p = int(primes[0])
    modulus = Modulus.of([p], expr.coefficients())
    sol = edge_block_solution(expr, params, p)

    coeffs = polynomial_block(params['c5'], params['c6'], params.get('lam3', 0), params.get('mu3', 0), p)
    gamma, achieved = small_value_table(coeffs, p)
    bound = int(np.abs(achieved).max())
    allowed = [sol.constant + s for s in range(-bound, bound + 1)]
    certificate = ExactValueSet.from_integers(modulus.values, allowed)

    maps = MapSet(modulus, {
        0: (affine_map(0, p, sol.a, sol.b),),
        1: (affine_map(0, p, sol.c, sol.d),),
        2: (table_map(0, p, gamma),),
    })
    analytic = small_value_bound(2, p, constant_c)
    measurements = {
        'edge_constant': sol.constant, 'affine': [sol.a, sol.b, sol.c, sol.d],
        'max_block_value': bound, 'block_bound': analytic, 'within_bound': bound <= analytic,
    }
    logger.info(f"repeated edge over {p}: block constant {sol.constant}, "
                f"|γ-block| ≤ {bound} (bound {analytic:.1f})")
    return modulus, maps, certificate, measurements
