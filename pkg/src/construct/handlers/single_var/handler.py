"""Handler for one-variable expressions"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...base_handler import BaseHandler, Built
from ...single_var import single_var_construct


class SingleVarHandler(BaseHandler):
    """Every given prime becomes one coordinate; exactly linear α is solved outright."""

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return single_var_construct(expr, primes)
