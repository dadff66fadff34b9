"""Handler for forests of edges"""

from typing import Any, Dict, Optional, Tuple

from ....expr.model import Expression
from ...acyclic import acyclic_ident
from ...base_handler import BaseHandler, Built


class AcyclicIdentHandler(BaseHandler):
    """One owner coordinate per quadratic variable; the carry set is computed exactly."""

    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        return acyclic_ident(expr, primes, self.settings.verification.joint_image_limit,
                             self.settings.construction.strong_ident_c)
