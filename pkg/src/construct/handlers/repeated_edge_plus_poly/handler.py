"""Handler for a repeated edge next to an isolated quadratic block"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...base_handler import BaseHandler, Built
from ...repeated_edge import repeated_edge_plus_isolated


class RepeatedEdgePlusPolyHandler(BaseHandler):

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return repeated_edge_plus_isolated(expr, params, primes, self.settings.construction.small_value_c)
