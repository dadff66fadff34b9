"""
Acyclic identification: one prime per variable, variable i owns coordinate i.

At coordinate i the neighbours of i get α_j = −W⁻¹S_j·x_j + c_j, which turns
each edge (i, j) into c_j·(Wα_i + S_i x_i); every further vertex reached from
i gets the map that kills its parent edge outright. Components not containing
i cancel their root's linear part when they can. What is left of coordinate i
is a polynomial in α_i plus single-variable pieces, which the identification
engine absorbs.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import PreconditionError, PrimeError
from ..expr.graph import EdgeGroup, adjacency, edge_groups, is_forest
from ..expr.model import Expression
from ..residue import Modulus, check_ordering, inverse
from .certificate import Certificate
from .strong_ident import identify
from .varmap import MapSet, VarMap, affine_map

logger = logging.getLogger(__name__)


def _killing_map(g: EdgeGroup, var: int, i: int, p: int, constant: int = 0) -> VarMap:
    """α_var with W·α_var + S_var·x_var ≡ W·constant at coordinate i."""
    total = g.shift_sum_u if var == g.u else g.shift_sum_v
    slope = -total * inverse(g.weight, p, i)
    return affine_map(i, p, slope, constant)


def _coordinate_rules(expr: Expression, groups: List[EdgeGroup], owner: int, i: int,
                      p: int) -> Dict[int, VarMap]:
    adj = adjacency(groups)
    loops = {t.variables[0] for t in expr.loop_terms}
    lam = expr.linear_of(owner).lam % p
    needs_unit = owner not in loops and lam == 0

    rules: Dict[int, VarMap] = {}
    seen = {owner}
    queue = deque()
    for g in adj.get(owner, []):
        j = g.other(owner)
        constant = 0
        if needs_unit:
            constant, needs_unit = 1, False
        rules[j] = _killing_map(g, j, i, p, constant)
        seen.add(j)
        queue.append(j)

    def walk():
        while queue:
            u = queue.popleft()
            for g in adj.get(u, []):
                w = g.other(u)
                if w in seen:
                    continue
                rules[w] = _killing_map(g, w, i, p)
                seen.add(w)
                queue.append(w)

    walk()
    for root in expr.variables:
        if root in seen:
            continue
        lin = expr.linear_of(root)
        if lin.lam % p:
            rules[root] = affine_map(i, p, -lin.mu * inverse(lin.lam, p, i), 0)
        else:
            rules[root] = affine_map(i, p, 0, 0)
        seen.add(root)
        queue.append(root)
        walk()
    return rules


def acyclic_ident(expr: Expression, primes: Sequence[int], joint_limit: int = 10 ** 7,
                  constant_c: Optional[float] = None) -> Tuple[Modulus, MapSet, Certificate, Dict]:
    """
    Maps for an expression whose quadratic graph is a forest.

    Args:
        expr: Normalized expression over variables 0..n−1
        primes: At least n primes; the first n are used, coordinate i for variable i
        joint_limit: Passed to the identification engine
        constant_c: C' small-value constant, passed to the identification engine

    Raises:
        PreconditionError: If the graph has a cycle or a repeated edge
        PrimeError: If fewer than n primes are given or their ordering fails
    """
    n = expr.n_vars
    if expr.variables != tuple(range(n)):
        raise PreconditionError(f"variables must be 0..{n - 1}, got {expr.variables}")
    groups = edge_groups(expr)
    if not is_forest(expr.variables, groups):
        raise PreconditionError("quadratic graph has a cycle or a repeated edge")
    if len(primes) < n:
        raise PrimeError(f"need {n} primes, got {len(primes)}")
    chosen = [int(p) for p in primes[:n]]
    check_ordering(chosen)
    modulus = Modulus.of(chosen, expr.coefficients())

    fixed: Dict[int, Dict[int, VarMap]] = {v: {} for v in expr.variables}
    for i, p in enumerate(chosen):
        for v, rule in _coordinate_rules(expr, groups, i, i, p).items():
            fixed[v][i] = rule

    reference = min(range(n), key=lambda i: chosen[i])
    result = identify(expr, modulus, {i: i for i in range(n)}, fixed, reference, joint_limit, constant_c)
    logger.info(f"acyclic identification over {chosen}: reference prime {chosen[reference]}")
    return modulus, result.maps, result.certificate, result.measurements
