"""Handler for a repeated edge plus single edge when A + λ₃ ≠ 0"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ....randomized.final_pq import final_pq_simple
from ...base_handler import BaseHandler, Built


class FinalPqSimpleHandler(BaseHandler):

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return final_pq_simple(expr, params, primes)
