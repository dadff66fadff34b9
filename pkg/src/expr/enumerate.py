"""
Enumeration of the canonical expressions instantiated by elements of lA² + kA.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Tuple

from ..core.exceptions import PreconditionError
from .canonical import canonicalize
from .model import Atom, Expression, Linear, Term

logger = logging.getLogger(__name__)


def set_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """Restricted growth strings of length n (one per set partition)."""
    if n == 0:
        yield ()
        return

    def grow(prefix: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(top + 2):
            prefix.append(label)
            yield from grow(prefix, max(top, label))
            prefix.pop()

    yield from grow([0], 0)


def _quadratic_parts(l: int) -> List[Expression]:
    """Canonical sums of l products of atoms."""
    seen: Dict[Tuple, Expression] = {}
    for labels in set_partitions(2 * l):
        for shifts in itertools.product((0, 1), repeat=2 * l):
            terms = tuple(
                Term(1, (Atom(labels[2 * i], shifts[2 * i]), Atom(labels[2 * i + 1], shifts[2 * i + 1])))
                for i in range(l)
            )
            canon = canonicalize(Expression(terms))
            seen.setdefault(canon.key(), canon)
    return list(seen.values())


def _linear_parts_fresh(k: int) -> List[Tuple[Linear, ...]]:
    """Linear parts over fresh variables only (the l = 0 family)."""
    parts = []
    for labels in set_partitions(k):
        for shifts in itertools.product((0, 1), repeat=k):
            acc: Dict[int, List[int]] = {}
            for label, shift in zip(labels, shifts):
                lm = acc.setdefault(label, [0, 0])
                lm[0] += 1
                lm[1] += shift
            parts.append(tuple(Linear(v, lm[0], lm[1]) for v, lm in acc.items()))
    return parts


def _linear_parts_on(variables: Tuple[int, ...], k: int) -> Iterator[Tuple[Linear, ...]]:
    """
    Linear parts landing on existing variables.

    Summands on fresh variables cancel by an affine choice of their maps,
    so only multisets of size ≤ k over the existing (var, shift) pairs remain.
    """
    choices = [(v, s) for v in variables for s in (0, 1)]
    for size in range(k + 1):
        for combo in itertools.combinations_with_replacement(choices, size):
            acc: Dict[int, List[int]] = {}
            for v, s in combo:
                lm = acc.setdefault(v, [0, 0])
                lm[0] += 1
                lm[1] += s
            yield tuple(Linear(v, lm[0], lm[1]) for v, lm in acc.items())


def enumerate_expressions(l: int, k: int) -> List[Expression]:
    """
    Complete, duplicate-free list of canonical expressions for lA² + kA.

    Args:
        l: Number of quadratic summands a·a'
        k: Number of linear summands

    Returns:
        Canonical expressions sorted by number of variables
    """
    if l < 0 or k < 0 or l + k < 1:
        raise PreconditionError(f"need l, k ≥ 0 and l + k ≥ 1, got l={l}, k={k}")

    found: Dict[Tuple, Expression] = {}
    if l == 0:
        for linear in _linear_parts_fresh(k):
            canon = canonicalize(Expression((), linear))
            found.setdefault(canon.key(), canon)
    else:
        for quad in _quadratic_parts(l):
            for linear in _linear_parts_on(quad.variables, k):
                canon = canonicalize(Expression(quad.terms, linear))
                found.setdefault(canon.key(), canon)

    result = sorted(found.values(), key=lambda e: (e.n_vars, e.key()))
    logger.debug(f"Enumerated {len(result)} expressions for l={l}, k={k}")
    return result
