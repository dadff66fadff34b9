"""Lookup of case handlers and the classify-then-build entry point"""

import logging
from typing import Optional, Sequence

from ..core.exceptions import UnsupportedExpressionError
from ..core.settings import Settings
from ..expr.classify import CaseTag, classify
from ..expr.model import Expression
from .base_handler import BaseHandler
from .result import Construction

logger = logging.getLogger(__name__)


def get_handler(tag: CaseTag, settings: Settings = None) -> BaseHandler:
    """
    Instantiate the handler registered for a case tag

    Raises:
        UnsupportedExpressionError: If no handler is registered for the tag
    """
    from .handlers import HANDLERS

    key = tag.value if isinstance(tag, CaseTag) else str(tag)
    if key not in HANDLERS:
        raise UnsupportedExpressionError(f"no handler registered for {key}")
    return HANDLERS[key](settings)


def construct_expression(expr: Expression, primes: Optional[Sequence[int]] = None,
                         seed: Optional[int] = None, settings: Settings = None) -> Construction:
    """
    Classify an expression and build maps for it

    Args:
        expr: Any supported expression
        primes: Primes to build over (handler defaults when omitted)
        seed: Seed for randomized cases
        settings: Application settings

    Returns:
        Construction whose maps apply to `expr` itself
    """
    classification = classify(expr)
    handler = get_handler(classification.tag, settings)
    logger.debug(f"{classification.tag.value}: {classification.description}")
    return handler.construct_for(expr, classification, primes, seed)
