"""Configuration for three_cycle_five_prime handler"""

# Handler identity
CASE_TAG = "THREE_CYCLE_FIVE_PRIME"

DESCRIPTION = "triangle over five coordinates with a glued product"

# Fewest primes the construction can use
MIN_PRIMES = 5

# Primes used when none are given (None: CONSTRUCT_DEFAULT_PRIMES)
DEFAULT_PRIMES = (17, 19, 23, 29, 31)
