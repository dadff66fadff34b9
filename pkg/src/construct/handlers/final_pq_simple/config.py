"""Configuration for final_pq_simple handler"""

# Handler identity
CASE_TAG = "FINAL_PQ_SIMPLE"

DESCRIPTION = "repeated edge plus single edge, affine maps"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = None
