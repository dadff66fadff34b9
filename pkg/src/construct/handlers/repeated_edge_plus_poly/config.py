"""Configuration for repeated_edge_plus_poly handler"""

# Handler identity
CASE_TAG = "REPEATED_EDGE_PLUS_POLY"

DESCRIPTION = "affine edge block plus small values for the isolated block"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = None
