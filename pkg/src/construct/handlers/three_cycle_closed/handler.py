"""Handler for triangles with three distinct shift pairs"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...base_handler import BaseHandler, Built
from ...three_cycle import LinearPart, three_cycle_closed_form


class ThreeCycleClosedHandler(BaseHandler):

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return three_cycle_closed_form(expr, tuple(params['c']), LinearPart.of(params), primes)
