"""Handler for a lone repeated edge solved by affine maps"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ....expr.model import Expression
from ....residue import Modulus
from ...base_handler import BaseHandler, Built
from ...certificate import ExactValueSet
from ...repeated_edge import edge_block_solution
from ...varmap import MapSet, affine_map

logger = logging.getLogger(__name__)


class AffineHandler(BaseHandler):
    """α = ax + b, β = cy + d on each prime; the expression is one constant per coordinate."""

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        modulus = Modulus.of(primes, expr.coefficients())
        alpha, beta, constants = [], [], []
        for i, p in enumerate(modulus.values):
            sol = edge_block_solution(expr, params, p)
            alpha.append(affine_map(i, p, sol.a, sol.b))
            beta.append(affine_map(i, p, sol.c, sol.d))
            constants.append(sol.constant)
        maps = MapSet(modulus, {0: tuple(alpha), 1: tuple(beta)})
        certificate = ExactValueSet(modulus.values, np.array([constants], dtype=np.int64))
        logger.debug(f"affine block constants {constants}")
        return modulus, maps, certificate, {'constant': constants}
