"""Configuration for affine handler"""

# Handler identity
CASE_TAG = "AFFINE"

DESCRIPTION = "repeated edge made constant by affine maps"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = None
