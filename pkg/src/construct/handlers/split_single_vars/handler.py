"""Handler for expressions without mixed terms"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...base_handler import BaseHandler, Built
from ...split import split_single_vars


class SplitSingleVarsHandler(BaseHandler):

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return split_single_vars(expr, primes, self.settings.construction.small_value_c)
