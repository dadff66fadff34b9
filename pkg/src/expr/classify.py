"""
Case analysis for expressions from lA² + kA with l ≤ 3.

Precedence follows the proofs: linear-only variables are cancelled first,
then groups of mixed terms are factorized, then the graph shape decides,
then coefficient conditions pick among sibling handlers.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

import sympy

from ..core.exceptions import UnsupportedExpressionError
from .canonical import merge
from .graph import EdgeGroup, edge_groups, is_forest
from .model import Expression, alpha_symbol, x_symbol
from .transform import CancelLinear, Rename, Shift, Transform, make_regroup

logger = logging.getLogger(__name__)


class CaseTag(str, Enum):
    SINGLE_VAR = 'SINGLE_VAR'
    AFFINE = 'AFFINE'
    BASIC_IDENT = 'BASIC_IDENT'
    ACYCLIC_IDENT = 'ACYCLIC_IDENT'
    SPLIT_SINGLE_VARS = 'SPLIT_SINGLE_VARS'
    THREE_CYCLE_CLOSED = 'THREE_CYCLE_CLOSED'
    THREE_CYCLE_DEGENERATE = 'THREE_CYCLE_DEGENERATE'
    THREE_CYCLE_FIVE_PRIME = 'THREE_CYCLE_FIVE_PRIME'
    REPEATED_EDGE_PLUS_POLY = 'REPEATED_EDGE_PLUS_POLY'
    PROB_TWO_VAR = 'PROB_TWO_VAR'
    FINAL_PQ_SIMPLE = 'FINAL_PQ_SIMPLE'
    FINAL_PQ_PROB = 'FINAL_PQ_PROB'


@dataclass(frozen=True)
class Classification:
    """Case tag, the transform E → E', and E' itself."""

    tag: CaseTag
    transform: Transform
    normalized: Expression
    params: Dict[str, Any] = field(default_factory=dict)
    description: str = ''


def _unsupported(reason: str):
    raise UnsupportedExpressionError(f"outside the l ≤ 3 case analysis: {reason}")


def _rename(order) -> Rename:
    """Rename so that order[i] becomes variable i."""
    return Rename(tuple((old, new) for new, old in enumerate(order)))


def _linear_params(expr: Expression, variables) -> Dict[str, int]:
    out = {}
    for i, v in enumerate(variables, start=1):
        lin = expr.linear_of(v)
        out[f'lam{i}'] = lin.lam
        out[f'mu{i}'] = lin.mu
    return out


def _unit_two_term(g: EdgeGroup) -> bool:
    return len(g.terms) == 2 and all(w == 1 for w, _, _ in g.terms)


def _normalize_block(transform: Transform, g: EdgeGroup) -> Tuple[Transform, Dict[str, int]]:
    """
    Shift a two-term repeated edge on (0, 1) into α'β' + (α'+ν₁x)(β'+ν₂y).

    Weighted or three-term blocks are left as they are.
    """
    if not _unit_two_term(g):
        return transform, {}
    (_, a0, b0), (_, a1, b1) = g.terms
    transform = transform.then(Shift(0, a0)).then(Shift(1, b0))
    return transform, {'nu1': a1 - a0, 'nu2': b1 - b0}


def _classify_cycle_free(core: Expression, groups: List[EdgeGroup]) -> Classification:
    if core.n_vars == 2 and not core.loop_terms and len(groups) == 1:
        g = groups[0]
        w = g.weight
        if g.shift_sum_u % w == 0 and g.shift_sum_v % w == 0:
            transform = Transform().then(Shift(0, g.shift_sum_u // w)).then(Shift(1, g.shift_sum_v // w))
            if len(g.terms) > 1:
                transform = transform.then(make_regroup(transform.apply(core), 0, 1))
            normalized = transform.apply(core)
            params = {'lam0': w, **_linear_params(normalized, (0, 1))}
            return Classification(CaseTag.BASIC_IDENT, transform, normalized, params,
                                  'basic identification of two coordinates')
    return Classification(CaseTag.ACYCLIC_IDENT, Transform(), core, {},
                          'acyclic identification of coordinates')


def _classify_three_cycle(core: Expression, groups: List[EdgeGroup]) -> Classification:
    if any(len(g.terms) != 1 or g.terms[0][0] != 1 for g in groups):
        _unsupported('weighted 3-cycle')

    def shifts(a: int, b: int) -> Tuple[int, int]:
        g = next(g for g in groups if {g.u, g.v} == {a, b})
        _, su, sv = g.terms[0]
        return (su, sv) if g.u == a else (sv, su)

    def read(order) -> Tuple[int, ...]:
        """c₁..c₆ for x=order[0], y=order[1], z=order[2]."""
        return shifts(order[0], order[1]) + shifts(order[1], order[2]) + shifts(order[2], order[0])

    identity = (0, 1, 2)
    c = read(identity)
    if c[0] != c[5] and c[1] != c[2] and c[3] != c[4]:
        chosen, tag, desc = identity, CaseTag.THREE_CYCLE_CLOSED, '3-cycle with closed-form affine maps'
    else:
        chosen = next(o for o in itertools.permutations(identity)
                      if read(o)[0] == read(o)[5])
        c = read(chosen)
        if (c[2] - c[1]) * (c[3] - c[4]) == 0:
            tag, desc = CaseTag.THREE_CYCLE_DEGENERATE, '3-cycle, three-prime identification'
        else:
            tag, desc = CaseTag.THREE_CYCLE_FIVE_PRIME, '3-cycle, five-prime identification'
    transform = Transform().then(_rename(chosen))
    normalized = transform.apply(core)
    params = {'c': read(chosen), **_linear_params(normalized, (0, 1, 2))}
    return Classification(tag, transform, normalized, params, desc)


def _classify_final_pq(core: Expression, transform: Transform) -> Classification:
    """After `transform`, x=0 is the shared vertex, y=1, z=2."""
    staged = transform.apply(core)
    xy = [t for t in staged.mixed_terms if set(t.variables) == {0, 1}]
    xz = next(t for t in staged.mixed_terms if set(t.variables) == {0, 2})
    shifts = [(t.factors[0].shift, t.factors[1].shift) for t in xy]
    c5, c6 = xz.factors[0].shift, xz.factors[1].shift
    if c5 == shifts[0][0]:
        first, other = shifts
    elif c5 == shifts[1][0]:
        other, first = shifts
    else:
        _unsupported('single edge shift matches neither repeated-edge term')

    transform = transform.then(Shift(0, first[0])).then(Shift(1, first[1])).then(Shift(2, c6))
    normalized = transform.apply(core)
    c1, c2 = other[0] - first[0], other[1] - first[1]
    if c1 not in (-1, 1) or c2 not in (-1, 1):
        _unsupported('repeated edge shifts differ by more than one')
    params = {'c1': c1, 'c2': c2, **_linear_params(normalized, (0, 1, 2))}
    if c2 * params['mu2'] - params['lam2'] + params['lam3'] != 0:
        return Classification(CaseTag.FINAL_PQ_SIMPLE, transform, normalized, params,
                              'repeated edge plus single edge, affine solution')
    return Classification(CaseTag.FINAL_PQ_PROB, transform, normalized, params,
                          'repeated edge plus single edge, two-prime randomized construction')


def _classify_repeated(core: Expression, groups: List[EdgeGroup]) -> Classification:
    double = [g for g in groups if not g.factorizes]
    if len(double) != 1:
        _unsupported('more than one repeated edge')
    g = double[0]
    others = [h for h in groups if h is not g]
    loops = core.loop_terms
    n = core.n_vars

    if n == 2:
        if not loops:
            transform, extra = _normalize_block(Transform(), g)
            normalized = transform.apply(core)
            params = {**extra, **_linear_params(normalized, (0, 1))}
            return Classification(CaseTag.AFFINE, transform, normalized, params,
                                  'repeated edge solved by affine maps')
        if len(loops) != 1:
            _unsupported('repeated edge with several loops')
        loop_var = loops[0].variables[0]
        transform = Transform().then(_rename([loop_var, 1 - loop_var]))
        normalized = transform.apply(core)
        return Classification(CaseTag.PROB_TWO_VAR, transform, normalized,
                              prob_two_var_coefficients(normalized),
                              'repeated edge plus loop, randomized two-variable construction')

    if n == 3:
        third = next(v for v in core.variables if v not in (g.u, g.v))
        if not others and len(loops) == 1 and loops[0].variables[0] == third:
            transform = Transform().then(_rename([g.u, g.v, third]))
            transform, extra = _normalize_block(transform, g)
            normalized = transform.apply(core)
            loop = normalized.loop_terms[0]
            if loop.degree != 2 or loop.coeff != 1:
                _unsupported('isolated polynomial block of unexpected shape')
            params = {**extra, 'c5': loop.factors[0].shift, 'c6': loop.factors[1].shift,
                      **_linear_params(normalized, (0, 1, 2))}
            return Classification(CaseTag.REPEATED_EDGE_PLUS_POLY, transform, normalized, params,
                                  'repeated edge plus isolated polynomial')
        if len(others) == 1 and not loops and _unit_two_term(g):
            h = others[0]
            if h.weight != 1 or len(h.terms) != 1:
                _unsupported('weighted single edge next to a repeated edge')
            shared = g.u if g.u in (h.u, h.v) else g.v
            partner = g.v if shared == g.u else g.u
            return _classify_final_pq(core, Transform().then(_rename([shared, partner, third])))
        _unsupported('three variables with a repeated edge in an unsupported shape')

    if n == 4 and len(others) == 1 and not loops:
        h = others[0]
        if {h.u, h.v} & {g.u, g.v} or len(h.terms) != 1:
            _unsupported('four variables with touching or weighted edges')
        transform = Transform().then(_rename([g.u, g.v, h.u, h.v]))
        transform, extra = _normalize_block(transform, g)
        _, a, b = h.terms[0]
        transform = transform.then(Shift(2, a)).then(Shift(3, b))
        normalized = transform.apply(core)
        params = {'lam0': h.weight, 'affine_block': True, **extra,
                  **_linear_params(normalized, (0, 1, 2, 3))}
        return Classification(CaseTag.BASIC_IDENT, transform, normalized, params,
                              'affine block plus basic identification')

    _unsupported(f'repeated edge with {n} variables')


def prob_two_var_coefficients(expr: Expression) -> Dict[str, int]:
    """
    n₁..n₇ of n₁α² + α(n₂x + n₃β + n₄y) + x(n₅x + n₆β + n₇y), plus the linear part.

    Variable 0 carries the loop.
    """
    a, b, x, y = alpha_symbol(0), alpha_symbol(1), x_symbol(0), x_symbol(1)
    poly = sympy.Poly(expr.to_sympy(), a, b, x, y)

    def coeff(*monomial) -> int:
        return int(poly.coeff_monomial(monomial))

    if coeff(0, 2, 0, 0) or coeff(0, 1, 0, 1) or coeff(0, 0, 0, 2):
        _unsupported('second variable carries a loop')
    return {
        'n1': coeff(2, 0, 0, 0), 'n2': coeff(1, 0, 1, 0), 'n3': coeff(1, 1, 0, 0),
        'n4': coeff(1, 0, 0, 1), 'n5': coeff(0, 0, 2, 0), 'n6': coeff(0, 1, 1, 0),
        'n7': coeff(0, 0, 1, 1),
        'lam1': coeff(1, 0, 0, 0), 'mu1': coeff(0, 0, 1, 0),
        'lam2': coeff(0, 1, 0, 0), 'mu2': coeff(0, 0, 0, 1),
    }


def classify(expr: Expression) -> Classification:
    """
    Route an expression to its constructor.

    Raises:
        UnsupportedExpressionError: Outside the l ≤ 3 case analysis
    """
    expr = merge(expr)
    transform = Transform()
    for v in expr.linear_only_variables():
        lin = expr.linear_of(v)
        if lin.lam == 0:
            _unsupported(f"x{v} occurs without its map")
        transform = transform.then(CancelLinear(v, lin.lam, lin.mu))
    core = transform.apply(expr)

    variables = core.variables
    if not variables:
        _unsupported('empty expression')
    if variables != tuple(range(len(variables))):
        transform = transform.then(_rename(variables))
        core = transform.apply(expr)

    n = core.n_vars
    if n == 1:
        return Classification(CaseTag.SINGLE_VAR, transform, core, {}, 'single-variable avoidance')
    if any(t.degree > 2 for t in core.terms):
        _unsupported('degree ≥ 3 terms in several variables')

    groups = edge_groups(core)
    if any(g.weight == 0 for g in groups):
        _unsupported("mixed terms with total weight 0")
    if not groups:
        local = Classification(CaseTag.SPLIT_SINGLE_VARS, Transform(), core, {},
                               'separable single-variable blocks')
    elif is_forest(core.variables, groups):
        local = _classify_cycle_free(core, groups)
    elif all(g.factorizes for g in groups):
        if n == 3 and len(groups) == 3:
            local = _classify_three_cycle(core, groups)
        else:
            _unsupported('cycle other than a triangle')
    else:
        local = _classify_repeated(core, groups)

    composed = Transform(transform.steps + local.transform.steps)
    logger.debug(f"classified as {local.tag.value}: {composed.describe()}")
    return Classification(local.tag, composed, composed.apply(expr), local.params, local.description)
