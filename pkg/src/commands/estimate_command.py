"""
Estimate command handler
Predicts case counts, coordinates and feasibility of an assembly without building it
"""

import logging
from typing import Any, Dict

from ..assemble import estimate, plan
from ..core.settings import Settings, get_settings
from .common import mark, print_banner, report_store, settings_for
from .run_config import RunConfig

logger = logging.getLogger(__name__)


class EstimateCommand:
    """Handles estimate command operations"""

    def __init__(self, settings: Settings = None):
        """
        Initialize estimate command

        Args:
            settings: Application settings (uses global if not provided)
        """
        self.settings = settings or get_settings()

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """
        Estimate one assembly

        Args:
            config: Validated run configuration

        Returns:
            Report dictionary; 'pass' is the feasibility verdict
        """
        settings = settings_for(config, self.settings)
        store = report_store(config, settings, name=f"l{config.l}_k{config.k}_{config.assembly_mode}")
        epsilon = config.epsilon if config.epsilon is not None else settings.assembly.epsilon

        staged = plan(config.l, config.k, epsilon)
        predicted = estimate(staged, mode=config.assembly_mode, base_primes=config.base_primes,
                             settings=settings, schedule=config.schedule)
        failure = predicted.first_failure()
        if failure is not None:
            logger.warning(f"{config.assembly_mode} assembly infeasible at stage {failure.stage}: {failure.reason}")

        report = {
            'config': config.to_report(),
            'modulus': {'stage_one_primes': [list(p) for _, p in predicted.stage_one_primes]},
            'expressions': staged.to_dict()['expressions'],
            'certificates': [],
            'image_reports': [],
            'estimate': predicted.to_dict(),
            'density_bound': {'epsilon': float(staged.epsilon), 'schedule': [float(e) for e in predicted.plan.schedule]},
            'feasible': predicted.feasible,
            'infeasible_stage': None if failure is None else failure.stage,
            'pass': predicted.feasible,
        }
        report['path'] = str(store.write(report))
        return report

    def display_results(self, results: Dict[str, Any]):
        """
        Display the per-stage estimate

        Args:
            results: Results dictionary from execute()
        """
        config, est = results['config'], results['estimate']
        print_banner(f"ESTIMATE: {config['l']}A² + {config['k']}A ({est['mode']})")
        print(f"Expressions: {len(results['expressions'])}")
        for stage in est['stages']:
            cases = stage['case_count'] if stage['case_count'] is not None else f"2^{stage['case_count_log2']}"
            coords = stage['coordinates'] if stage['coordinates'] is not None else f"2^{stage['coordinates_log2']}"
            print(f"{mark(stage['feasible'])} stage {stage['stage']}: {stage['expressions']} expressions, "
                  f"{cases} cases, {coords} coordinates, "
                  f"required per-block fraction 10^{stage['required_fraction_log10']}")
            if stage['reason']:
                print(f"    {stage['reason']}")
        verdict = 'feasible' if results['feasible'] else f"infeasible at stage {results['infeasible_stage']}"
        print(f"\n{mark(results['feasible'])} {verdict}")
        print(f"Report: {results['path']}")
