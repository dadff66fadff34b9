"""Configuration for basic_ident handler"""

# Handler identity
CASE_TAG = "BASIC_IDENT"

DESCRIPTION = "two coordinates identified through mod maps"

# Fewest primes the construction can use
MIN_PRIMES = 2

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = None
