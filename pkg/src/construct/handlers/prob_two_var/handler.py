"""Handler for a repeated edge plus a loop on two variables"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ....expr.model import Expression
from ....randomized.amplify import prime_density, stack_blocks
from ....randomized.rng import RngSpec, from_settings
from ....randomized.two_var import prob_two_var
from ....residue import Modulus
from ...base_handler import BaseHandler, Built
from ...certificate import AvoidedValues
from ...varmap import MapSet, table_map

logger = logging.getLogger(__name__)


class ProbTwoVarHandler(BaseHandler):
    """
    One random pair of tables per prime; each coordinate never takes 0.

    Prime j draws from seed + j·max_retries.
    """

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        rng, policy = from_settings(seed, self.settings)
        blocks = []
        for j, p in enumerate(primes):
            spec = RngSpec((rng.seed + j * policy.max_retries) % 2 ** 64, rng.algorithm)
            found = prob_two_var(params, p, spec, policy)
            modulus = Modulus.of([p], expr.coefficients())
            maps = MapSet(modulus, {0: (table_map(0, p, found.alpha),), 1: (table_map(0, p, found.beta),)})
            certificate = AvoidedValues((p,), np.zeros((1, 1), dtype=np.int64))
            blocks.append((maps, certificate, {'p': p, 'retries': found.retries}))
        modulus, maps, certificate = stack_blocks(blocks)
        density = prime_density(primes)
        return modulus, maps, certificate, {
            'density': str(density),
            'blocks': [extra for _, _, extra in blocks],
            'rng': rng.to_dict(),
            'retry_policy': policy.to_dict(),
        }
