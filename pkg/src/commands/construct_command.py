"""
Construct command handler
Builds maps for one expression and checks the certificate against its image
"""

import logging
import time
from typing import Any, Dict, List

import numpy as np

from ..construct.handler_factory import construct_expression
from ..construct.result import Construction
from ..core.exceptions import BudgetExceededError
from ..core.settings import Settings, get_settings
from ..expr.parser import format_expression, parse_expression
from ..verify.density import certificate_fraction
from ..verify.image import ImageReport, image_exhaustive, image_sampled
from .common import mark, print_banner, report_store, settings_for
from .run_config import RunConfig

logger = logging.getLogger(__name__)


def check_image(construction: Construction, config: RunConfig, settings: Settings) -> List[ImageReport]:
    """
    Image checks for a construction in the configured mode.

    'auto' enumerates exhaustively and falls back to sampling when the
    footprint domain exceeds the budget.
    """
    expr = construction.expression
    maps, certificate = construction.maps, construction.certificate
    rng = np.random.default_rng(config.seed)

    if config.mode in ('auto', 'exhaustive'):
        try:
            return [image_exhaustive(expr, maps, certificate, budget=config.budget, settings=settings)]
        except BudgetExceededError as e:
            if config.mode == 'exhaustive':
                raise
            logger.warning(f"{e}; falling back to sampled verification")
    return [image_sampled(expr, maps, certificate, samples=config.samples, rng=rng, settings=settings)]


class ConstructCommand:
    """Handles construct command operations"""

    def __init__(self, settings: Settings = None):
        """
        Initialize construct command

        Args:
            settings: Application settings (uses global if not provided)
        """
        self.settings = settings or get_settings()

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """
        Build and verify one expression

        Args:
            config: Validated run configuration

        Returns:
            Report dictionary (also written to disk)
        """
        settings = settings_for(config, self.settings)
        store = report_store(config, settings, name=str(config.seed))
        started = time.perf_counter()

        expr = parse_expression(config.expr)
        primes = config.resolved_primes()
        logger.info(f"constructing {format_expression(expr)} over {primes or 'default primes'}")
        construction = construct_expression(expr, primes, seed=config.seed, settings=settings)
        reports = check_image(construction, config, settings)

        modulus = construction.modulus
        claimed = construction.certificate.claimed_size
        bound = certificate_fraction(claimed, modulus.q)
        passed = all(r.passed for r in reports)
        report = {
            'config': config.to_report(),
            'modulus': modulus.to_dict(),
            'expressions': [{'text': config.expr, 'parsed': format_expression(expr), 'tag': construction.tag}],
            'certificates': [construction.certificate.to_dict()],
            'image_reports': [r.to_dict() for r in reports],
            'density_bound': {'claimed': str(claimed), 'q': str(modulus.q), 'fraction': float(bound)},
            'construction': construction.to_dict(store.table),
            'pass': passed,
            'wall_time': round(time.perf_counter() - started, 4),
        }
        report['path'] = str(store.write(report))
        return report

    def display_results(self, results: Dict[str, Any]):
        """
        Display construction and verification summary

        Args:
            results: Results dictionary from execute()
        """
        print_banner("CONSTRUCTION")
        expression = results['expressions'][0]
        print(f"Expression: {expression['parsed']}")
        print(f"Case:       {expression['tag']}")
        print(f"Primes:     {results['modulus']['primes']}")
        density = results['density_bound']
        print(f"Claimed:    {density['claimed']} of {density['q']} ({density['fraction']:.4%})")
        for r in results['image_reports']:
            if r['mode'] == 'exhaustive':
                print(f"{mark(r['passed'])} exhaustive: image {r['image_size']} ≤ {r['claimed_size']} "
                      f"over {r['checked']:,} points")
            else:
                print(f"{mark(r['passed'])} sampled: {r['violations']} violations in {r['checked']:,} points")
        print(f"\nReport: {results['path']}")
