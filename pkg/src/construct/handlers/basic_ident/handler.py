"""Handler for basic identification, alone or next to an affine block"""

import logging
from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ....residue import Modulus
from ...base_handler import BaseHandler, Built
from ...basic_ident import basic_ident
from ...repeated_edge import edge_block_solution
from ...varmap import MapSet, affine_map

logger = logging.getLogger(__name__)


class BasicIdentHandler(BaseHandler):
    """
    Two variables: λ₀αβ + linear part over the two smallest given primes.

    Four variables (affine_block): the repeated edge on (0, 1) is made
    constant by affine maps and its constants become the offset of the
    identified pair on (2, 3).
    """

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        p, q = sorted(primes)[:2]
        modulus = Modulus.of((p, q), expr.coefficients())
        lam0 = params['lam0']
        k = self.settings.construction.basic_ident_k

        if not params.get('affine_block'):
            pair = basic_ident(lam0, params['lam1'], params['mu1'], params['lam2'], params['mu2'], p, q,
                               size_factor=k)
            maps = MapSet(modulus, {0: pair.alpha, 1: pair.beta})
            return modulus, maps, pair.certificate, {'branch': pair.branch}

        solutions = [edge_block_solution(expr, params, r) for r in (p, q)]
        offset = tuple(s.constant for s in solutions)
        pair = basic_ident(lam0, params['lam3'], params['mu3'], params['lam4'], params['mu4'], p, q, offset,
                           size_factor=k)
        maps = MapSet(modulus, {
            0: tuple(affine_map(i, r, s.a, s.b) for i, (r, s) in enumerate(zip((p, q), solutions))),
            1: tuple(affine_map(i, r, s.c, s.d) for i, (r, s) in enumerate(zip((p, q), solutions))),
            2: pair.alpha,
            3: pair.beta,
        })
        logger.debug(f"affine block offset {offset}, identification branch {pair.branch}")
        return modulus, maps, pair.certificate, {'branch': pair.branch, 'offset': list(offset)}
