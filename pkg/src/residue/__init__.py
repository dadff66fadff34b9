"""Exact arithmetic in Z_q through its prime coordinates."""

from .primes import Prime, as_primes, primes_between, next_primes, dyadic_window, check_ordering, check_exceeds
from .modulus import Modulus, RingElem
from .maps import (
    lift, project, mod_between, centered_lift, inverse,
    project_array, mod_between_array, centered_array, crt_combine, crt_split,
)

__all__ = [
    'Prime', 'as_primes', 'primes_between', 'next_primes', 'dyadic_window',
    'check_ordering', 'check_exceeds', 'Modulus', 'RingElem',
    'lift', 'project', 'mod_between', 'centered_lift', 'inverse',
    'project_array', 'mod_between_array', 'centered_array', 'crt_combine', 'crt_split',
]
