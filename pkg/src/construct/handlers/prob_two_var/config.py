"""Configuration for prob_two_var handler"""

# Handler identity
CASE_TAG = "PROB_TWO_VAR"

DESCRIPTION = "repeated edge plus loop, zero avoided by random maps"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = (23,)
