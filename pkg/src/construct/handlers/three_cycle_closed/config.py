"""Configuration for three_cycle_closed handler"""

# Handler identity
CASE_TAG = "THREE_CYCLE_CLOSED"

DESCRIPTION = "triangle made constant by affine maps"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = None
