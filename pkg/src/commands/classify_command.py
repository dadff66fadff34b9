"""
Classify command handler
Parses an expression and reports its canonical form, graph and case
"""

import logging
from typing import Any, Dict

from ..construct.handler_factory import get_handler
from ..core.exceptions import UnsupportedExpressionError
from ..core.settings import Settings, get_settings
from ..expr.canonical import canonicalize
from ..expr.classify import classify
from ..expr.graph import build_graph
from ..expr.model import Expression
from ..expr.parser import format_expression, parse_expression
from .common import mark, print_banner

logger = logging.getLogger(__name__)


def _describe_graph(expr: Expression) -> str:
    try:
        return build_graph(expr).describe()
    except UnsupportedExpressionError:
        return 'none (terms above degree 2)'


class ClassifyCommand:
    """Handles classify command operations"""

    def __init__(self, settings: Settings = None):
        """
        Initialize classify command

        Args:
            settings: Application settings (uses global if not provided)
        """
        self.settings = settings or get_settings()

    def execute(self, text: str) -> Dict[str, Any]:
        """
        Classify one expression

        Args:
            text: Expression in the input grammar

        Returns:
            Canonical form, graph description, case tag and handler

        Raises:
            ExpressionParseError: If the text does not parse
        """
        expr = parse_expression(text)
        canon = canonicalize(expr)
        result: Dict[str, Any] = {
            'expression': text,
            'parsed': format_expression(expr),
            'canonical': format_expression(canon),
            'variables': canon.n_vars,
            'graph': _describe_graph(canon),
        }
        try:
            classification = classify(expr)
        except UnsupportedExpressionError as e:
            logger.warning(f"unsupported: {e}")
            result.update(tag='UNSUPPORTED', reason=str(e), supported=False)
            return result

        handler = get_handler(classification.tag, self.settings)
        result.update(
            tag=classification.tag.value,
            supported=True,
            handler=type(handler).__name__,
            handler_description=handler.description,
            description=classification.description,
            normalized=format_expression(classification.normalized),
            transform=classification.transform.describe(),
            params={k: (v if isinstance(v, (int, bool, str)) else str(v)) for k, v in classification.params.items()},
        )
        logger.info(f"{result['canonical']} → {result['tag']}")
        return result

    def display_results(self, results: Dict[str, Any]):
        """
        Display classification

        Args:
            results: Results dictionary from execute()
        """
        print_banner("CLASSIFICATION")
        print(f"Expression: {results['expression']}")
        print(f"Canonical:  {results['canonical']}")
        print(f"Graph:      {results['graph']}")
        if not results['supported']:
            print(f"{mark(False)} Tag: UNSUPPORTED ({results['reason']})")
            return
        print(f"{mark(True)} Tag: {results['tag']}")
        print(f"Handler:    {results['handler']} ({results['handler_description']})")
        print(f"Normalized: {results['normalized']}")
        print(f"Transform:  {results['transform']}")
        if results['params']:
            print(f"Params:     {results['params']}")
