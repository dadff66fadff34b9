"""Configuration for final_pq_prob handler"""

# Handler identity
CASE_TAG = "FINAL_PQ_PROB"

DESCRIPTION = "repeated edge plus single edge over a prime pair"

# Fewest primes the construction can use
MIN_PRIMES = 2

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = (37, 31)
