"""Configuration for split_single_vars handler"""

# Handler identity
CASE_TAG = "SPLIT_SINGLE_VARS"

DESCRIPTION = "no mixed terms, small values per variable"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = None
