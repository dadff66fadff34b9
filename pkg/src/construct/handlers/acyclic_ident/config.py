"""Configuration for acyclic_ident handler"""

# Handler identity
CASE_TAG = "ACYCLIC_IDENT"

DESCRIPTION = "forest of edges, one owner coordinate per variable"

# Fewest primes the construction can use
MIN_PRIMES = 2

# Primes used when none are given; one per variable, up to six, 2·p_min > p_max
DEFAULT_PRIMES = (23, 29, 31, 37, 41, 43)
