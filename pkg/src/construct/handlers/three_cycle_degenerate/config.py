"""Configuration for three_cycle_degenerate handler"""

# Handler identity
CASE_TAG = "THREE_CYCLE_DEGENERATE"

DESCRIPTION = "triangle over three identified coordinates"

# Fewest primes the construction can use
MIN_PRIMES = 3

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = (7, 11, 13)
