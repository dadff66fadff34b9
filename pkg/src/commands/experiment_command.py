"""
Experiment command handler
Brute-force minimum image of α(x)β(y) + x + y on tiny rings
"""

import logging
from typing import Any, Dict

from ..core.settings import Settings, get_settings
from ..verify.experiment import min_image_experiment
from .common import mark, print_banner, report_store
from .run_config import RunConfig

logger = logging.getLogger(__name__)


class ExperimentCommand:
    """Handles experiment command operations"""

    def __init__(self, settings: Settings = None):
        self.settings = settings or get_settings()

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        store = report_store(config, self.settings, name=f"p{config.p}_q{config.q}")
        result = min_image_experiment(config.p, config.q)
        lower = min(config.p, config.q)
        report = {
            'config': config.to_report(),
            'modulus': {'q': str(config.p * config.q), 'primes': [config.p, config.q]},
            'expressions': ['a(x)*b(y) + x + y'],
            'certificates': [],
            'image_reports': [],
            'experiment': result.to_dict(),
            'density_bound': {'minimum_fraction': result.minimum / (config.p * config.q)},
            'pass': result.minimum >= lower,
        }
        report['path'] = str(store.write(report))
        return report

    def display_results(self, results: Dict[str, Any]):
        exp = results['experiment']
        print_banner(f"MINIMUM IMAGE: Z_{exp['p']} × Z_{exp['q']}")
        print(f"α classes examined: {exp['alphas_examined']:,}")
        print(f"Minimizing α: {exp['alpha']}")
        print(f"Minimizing β: {exp['beta']}")
        print(f"{mark(results['pass'])} minimum image {exp['minimum']} ≥ min(p, q) = {exp['lower_bound_min_pq']}")
        print(f"\nReport: {results['path']}")
