"""
Canonical forms: like terms merged, zero coefficients dropped, variables
relabeled 0..n−1 by the lexicographically smallest serialization.

Only permutations that respect a per-variable invariant signature are tried,
so canonicalization stays cheap even for six-variable expressions.
"""

import itertools
from collections import defaultdict
from typing import Dict, List, Tuple

from .model import Atom, Expression, Linear, Term


def merge(expr: Expression) -> Expression:
    """Merge like terms and linear entries; drop zeros."""
    coeffs: Dict[Tuple[Atom, ...], int] = defaultdict(int)
    for t in expr.terms:
        coeffs[tuple(sorted(t.factors))] += t.coeff
    terms = tuple(Term(c, f) for f, c in coeffs.items() if c != 0)

    lams: Dict[int, List[int]] = defaultdict(lambda: [0, 0])
    for lin in expr.linear:
        lams[lin.var][0] += lin.lam
        lams[lin.var][1] += lin.mu
    linear = tuple(sorted(Linear(v, lm[0], lm[1]) for v, lm in lams.items() if lm[0] or lm[1]))
    return Expression(terms, linear)


def relabel(expr: Expression, mapping: Dict[int, int]) -> Expression:
    """Rename variables; mapping must cover every variable."""
    terms = tuple(
        Term(t.coeff, tuple(Atom(mapping[a.var], a.shift) for a in t.factors))
        for t in expr.terms
    )
    linear = tuple(Linear(mapping[lin.var], lin.lam, lin.mu) for lin in expr.linear)
    return Expression(terms, linear)


def _signature(expr: Expression, v: int) -> Tuple:
    rows = []
    for t in expr.terms:
        if v not in t.variables:
            continue
        own = tuple(sorted(a.shift for a in t.factors if a.var == v))
        other = tuple(sorted(a.shift for a in t.factors if a.var != v))
        rows.append((t.coeff, t.degree, own, other))
    lin = expr.linear_of(v)
    return (tuple(sorted(rows)), lin.lam, lin.mu)


def _sorted_key(expr: Expression) -> Tuple:
    return (
        tuple(sorted(t.key() for t in expr.terms)),
        tuple(sorted((lin.var, lin.lam, lin.mu) for lin in expr.linear)),
    )


def canonicalize_with_map(expr: Expression) -> Tuple[Expression, Dict[int, int]]:
    """
    Canonical form plus the renaming that produced it.

    Returns:
        (canonical expression, mapping old var → canonical var)
    """
    merged = merge(expr)
    variables = merged.variables
    if not variables:
        return merged, {}

    by_sig: Dict[Tuple, List[int]] = defaultdict(list)
    for v in variables:
        by_sig[_signature(merged, v)].append(v)
    classes = [by_sig[s] for s in sorted(by_sig)]

    best_key = None
    best_map: Dict[int, int] = {}
    for orders in itertools.product(*(itertools.permutations(c) for c in classes)):
        mapping = {}
        label = 0
        for order in orders:
            for v in order:
                mapping[v] = label
                label += 1
        key = _sorted_key(relabel(merged, mapping))
        if best_key is None or key < best_key:
            best_key, best_map = key, mapping

    result = relabel(merged, best_map)
    result = Expression(
        tuple(sorted(result.terms, key=Term.key)),
        tuple(sorted(result.linear)),
    )
    return result, best_map


def canonicalize(expr: Expression) -> Expression:
    """Idempotent canonical form, invariant under variable renaming."""
    return canonicalize_with_map(expr)[0]
