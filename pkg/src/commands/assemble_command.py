"""
Assemble command handler
Builds the staged set for lA² + kA, sweeps difference witnesses,
samples sum elements and reports the density bound
"""

import logging
import time
from typing import Any, Dict

import numpy as np

from ..assemble import assemble, plan, sample_sum_elements
from ..assemble.phi import LinearCaseStage, stage_tables
from ..core.settings import Settings, get_settings
from ..verify.cover import verify_cover_functional
from .common import mark, print_banner, report_store, settings_for
from .run_config import RunConfig

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1000


class AssembleCommand:
    """Handles assemble command operations"""

    def __init__(self, settings: Settings = None):
        """
        Initialize assemble command

        Args:
            settings: Application settings (uses global if not provided)
        """
        self.settings = settings or get_settings()

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """
        Assemble, then run the witness sweep and the sum-element sampler

        Args:
            config: Validated run configuration

        Returns:
            Report dictionary (also written to disk)

        Raises:
            InfeasibleError: Strict mode cannot meet the ε schedule
            BudgetExceededError: The build exceeds the coordinate or prime limits
        """
        settings = settings_for(config, self.settings)
        store = report_store(config, settings, name=f"l{config.l}_k{config.k}")
        started = time.perf_counter()
        epsilon = config.epsilon if config.epsilon is not None else settings.assembly.epsilon
        samples = config.samples or DEFAULT_SAMPLES

        staged = plan(config.l, config.k, epsilon)
        cover = assemble(staged, mode=config.assembly_mode, base_primes=config.base_primes,
                         seed=config.seed, settings=settings, schedule=config.schedule)
        build_time = time.perf_counter() - started

        rng = np.random.default_rng(config.seed)
        witnesses = verify_cover_functional(cover, rng, samples=samples, settings=settings)
        sums = sample_sum_elements(cover, config.l, config.k, rng, samples)

        density = cover.density
        tables = {name: store.table(name, values) for name, values in stage_tables(cover.phi)}
        certificates = [
            {'expression': b.expression_index, 'coordinates': [b.start, b.stop],
             **b.construction.certificate.to_dict()}
            for b in cover.phi.blocks
        ]
        certificates += [
            {'stage': s.size, 'kind': 'singleton_zero' if isinstance(s, LinearCaseStage) else 'per_block',
             'blocks': s.case_count * len(s.expression_indices)}
            for s in cover.phi.stages
        ]
        report = {
            'config': config.to_report(),
            'modulus': cover.modulus.to_dict(),
            'expressions': [
                {'index': i, 'text': text, 'variables': e.n_vars}
                for i, (text, e) in enumerate(zip(staged.to_dict()['expressions'], staged.expressions))
            ],
            'certificates': certificates,
            'image_reports': [],
            'cover': witnesses.to_dict(),
            'sum_samples': sums.to_dict(),
            'density_bound': density.to_dict(),
            'stage_bounds': cover.stage_bounds,
            'assembly': cover.to_dict(),
            'tables': tables,
            'pass': witnesses.passed and sums.passed and (config.assembly_mode == 'relaxed' or density.meets_target),
            'timing': {'build': round(build_time, 4), 'total': round(time.perf_counter() - started, 4)},
        }
        report['path'] = str(store.write(report))
        return report

    def display_results(self, results: Dict[str, Any]):
        """
        Display assembly summary

        Args:
            results: Results dictionary from execute()
        """
        config, modulus = results['config'], results['modulus']
        print_banner(f"ASSEMBLY: {config['l']}A² + {config['k']}A ({config['assembly_mode']})")
        print(f"Expressions: {len(results['expressions'])}")
        print(f"Coordinates: {modulus['coordinates']:,} (log2 Q ≈ {modulus['log2_q']:.0f})")
        for bound in results['stage_bounds']:
            print(f"  stage {bound['stage']}: bound {bound['bound']:.4f} "
                  f"(estimate {bound['estimate']:.4f}) vs ε {bound['epsilon']:.4f}")

        cover, sums, density = results['cover'], results['sum_samples'], results['density_bound']
        print(f"\n{mark(cover['passed'])} difference witnesses: {cover['failures']} of {cover['checked']} failed "
              f"({cover['mode']})")
        print(f"{mark(sums['passed'])} sampled sum elements: {sums['failures']} of {sums['checked']} escaped, "
              f"{sums['merged']} routed through merges")
        label = 'vacuous' if density['vacuous'] else ('meets ε' if density['meets_target'] else 'above ε')
        print(f"{mark(density['meets_target'])} density bound {density['bound_float']:.4f} ({label})")
        print(f"\nReport: {results['path']}")
