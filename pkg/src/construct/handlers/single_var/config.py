"""Configuration for single_var handler"""

# Handler identity
CASE_TAG = "SINGLE_VAR"

DESCRIPTION = "single variable, initial segment of each coordinate avoided"

# Fewest primes the construction can use
MIN_PRIMES = 1

# Primes used when none are given; each must exceed 2d(D+1)
DEFAULT_PRIMES = (101, 103, 107)
