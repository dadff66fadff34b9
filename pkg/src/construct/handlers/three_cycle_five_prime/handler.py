"""Handler for triangles whose third coordinate keeps a y·z product"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...base_handler import BaseHandler, Built
from ...three_cycle import LinearPart, three_cycle_five_prime


class ThreeCycleFivePrimeHandler(BaseHandler):
    """Coordinates four and five cancel the product through a digit split of the third."""

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        construction = self.settings.construction
        return three_cycle_five_prime(
            expr, tuple(params['c']), LinearPart.of(params), primes,
            c1=construction.five_prime_c1,
            c2=construction.five_prime_c2,
            joint_limit=self.settings.verification.joint_image_limit,
            constant_c=construction.strong_ident_c,
        )
