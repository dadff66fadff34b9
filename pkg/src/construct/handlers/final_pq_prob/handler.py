"""Handler for a repeated edge plus single edge when A + λ₃ = 0"""

import logging
from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ....randomized.final_pq import final_pq
from ....randomized.rng import from_settings
from ...base_handler import BaseHandler, Built

logger = logging.getLogger(__name__)


class FinalPqProbHandler(BaseHandler):
    """Builds over the two largest given primes, which must satisfy q < p < 2q."""

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        q, p = sorted(primes)[-2:]
        rng, policy = from_settings(seed, self.settings)
        modulus, maps, certificate, measurements = final_pq(
            expr, params, p, q, rng, policy, self.settings.verification.budget, self.settings)
        measurements = {**measurements, 'rng': rng.to_dict(), 'retry_policy': policy.to_dict()}
        return modulus, maps, certificate, measurements
