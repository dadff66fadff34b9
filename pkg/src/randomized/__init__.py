"""Las Vegas constructions: seeded draws, exhaustive re-checks, density amplification."""

from .rng import RngSpec, RetryPolicy, from_settings, las_vegas
from .two_var import prob_two_var, union_bound
from .evading import evading_family, evading_feasible
from .final_pq import final_pq, final_pq_simple
from .amplify import prob_amplify, pair_windows, pair_window_amplify, prime_density, pair_density

__all__ = [
    'RngSpec', 'RetryPolicy', 'from_settings', 'las_vegas',
    'prob_two_var', 'union_bound', 'evading_family', 'evading_feasible',
    'final_pq', 'final_pq_simple',
    'prob_amplify', 'pair_windows', 'pair_window_amplify', 'prime_density', 'pair_density',
]
