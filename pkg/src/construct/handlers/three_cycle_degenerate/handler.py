"""Handler for triangles that need three identified coordinates"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...base_handler import BaseHandler, Built
from ...three_cycle import LinearPart, three_cycle_degenerate


class ThreeCycleDegenerateHandler(BaseHandler):

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return three_cycle_degenerate(expr, tuple(params['c']), LinearPart.of(params), primes,
                                      self.settings.verification.joint_image_limit,
                                      self.settings.construction.strong_ident_c)
