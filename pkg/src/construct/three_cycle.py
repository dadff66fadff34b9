"""
Triangles (α+c₁x)(β+c₂y) + (β+c₃y)(γ+c₄z) + (γ+c₅z)(α+c₆x) + Σ λα + μx.

Three regimes, chosen by classify:

    closed      c₁≠c₆, c₂≠c₃, c₄≠c₅: affine maps make the expression constant
    degenerate  c₁=c₆ and (c₃−c₂)(c₄−c₅)=0: three primes, identification
    five-prime  c₁=c₆ and (c₃−c₂)(c₄−c₅)≠0: two more primes cancel the
                y₃z₃ product left over in the third coordinate

In the identification regimes the fixed maps make every edge either vanish
or become linear in one free map; the engine then solves the free maps and
computes the carry set exactly.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import PreconditionError, PrimeError
from ..expr.model import Expression
from ..residue import Modulus, check_ordering, inverse
from .certificate import Certificate, ExactValueSet
from .strong_ident import identify
from .varmap import LiftTerm, MapSet, VarMap, affine_map, lift_map

logger = logging.getLogger(__name__)

Coefficients = Tuple[int, int, int, int, int, int]


@dataclass(frozen=True)
class LinearPart:
    lam: Tuple[int, int, int]
    mu: Tuple[int, int, int]

    @classmethod
    def of(cls, params: Dict[str, int]) -> 'LinearPart':
        return cls(tuple(params.get(f'lam{i}', 0) for i in (1, 2, 3)),
                   tuple(params.get(f'mu{i}', 0) for i in (1, 2, 3)))


def closed_form_constants(c: Coefficients, lin: LinearPart, p: int) -> Tuple[int, int, int, int]:
    """
    (d₁, d₂, d₃, constant) over Z_p.

    Raises:
        PreconditionError: If one of c₁≠c₆, c₂≠c₃, c₄≠c₅ fails mod p
    """
    c1, c2, c3, c4, c5, c6 = c
    (l1, l2, l3), (m1, m2, m3) = lin.lam, lin.mu
    if (c1 - c6) % p == 0 or (c3 - c2) % p == 0 or (c5 - c4) % p == 0:
        raise PreconditionError(f"triangle {c} factorizes further mod {p}")
    d1 = (m2 - c3 * l2) * inverse(c3 - c2, p) % p
    d2 = (m3 - c5 * l3) * inverse(c5 - c4, p) % p
    d3 = (m1 - c1 * l1) * inverse(c1 - c6, p) % p
    constant = (d1 * d2 + d2 * d3 + d3 * d1 + l1 * d1 + l2 * d2 + l3 * d3) % p
    return d1, d2, d3, constant


def three_cycle_closed_form(expr: Expression, c: Coefficients, lin: LinearPart,
                            primes: Sequence[int]) -> Tuple[Modulus, MapSet, Certificate, Dict]:
    """α = −c₁x + d₁, β = −c₃y + d₂, γ = −c₅z + d₃ on every given prime."""
    modulus = Modulus.of(primes, expr.coefficients())
    alpha, beta, gamma, constants = [], [], [], []
    for i, p in enumerate(modulus.values):
        d1, d2, d3, k = closed_form_constants(c, lin, p)
        alpha.append(affine_map(i, p, -c[0], d1))
        beta.append(affine_map(i, p, -c[2], d2))
        gamma.append(affine_map(i, p, -c[4], d3))
        constants.append(k)
    certificate = ExactValueSet(modulus.values, np.array([constants], dtype=np.int64))
    maps = MapSet(modulus, {0: tuple(alpha), 1: tuple(beta), 2: tuple(gamma)})
    logger.info(f"closed-form triangle over {modulus.values}: constant {constants}")
    return modulus, maps, certificate, {'constant': constants}


def _three_prime_rules(c: Coefficients, lin: LinearPart, primes: Sequence[int]) -> Dict[int, Dict[int, VarMap]]:
    """Fixed maps on the first three coordinates; z, y, x are left free on 0, 1, 2."""
    c1, c2, c3, c4, c5, _ = c
    l1, l2, l3 = lin.lam
    p1, p2, p3 = primes[:3]
    return {
        0: {0: affine_map(0, p1, -c1, 0), 1: affine_map(1, p2, -c1, 0)},
        1: {0: affine_map(0, p1, -c3, 1 - l3), 2: affine_map(2, p3, -c2, 1 - l1)},
        2: {1: affine_map(1, p2, -c4, 1 - l2), 2: affine_map(2, p3, -c5, 0)},
    }


OWNERS = {0: 2, 1: 1, 2: 0}


def three_cycle_degenerate(expr: Expression, c: Coefficients, lin: LinearPart,
                           primes: Sequence[int], joint_limit: int = 10 ** 7,
                           constant_c: Optional[float] = None
                           ) -> Tuple[Modulus, MapSet, Certificate, Dict]:
    """
    Three-prime identification for c₁ = c₆ with (c₃−c₂)(c₄−c₅) = 0.

    Raises:
        PreconditionError: If c₁ ≠ c₆ or the y₃z₃ product survives
        PrimeError: If fewer than three primes are given or 2·p_min ≤ p_max
    """
    if c[0] != c[5]:
        raise PreconditionError("degenerate triangle needs c₁ = c₆")
    if (c[2] - c[1]) * (c[3] - c[4]) != 0:
        raise PreconditionError("(c₃−c₂)(c₄−c₅) ≠ 0 needs the five-prime construction")
    if len(primes) < 3:
        raise PrimeError(f"need three primes, got {len(primes)}")
    chosen = sorted(int(p) for p in primes[:3])
    check_ordering(chosen)
    modulus = Modulus.of(chosen, expr.coefficients())
    result = identify(expr, modulus, OWNERS, _three_prime_rules(c, lin, chosen), 0, joint_limit, constant_c)
    logger.info(f"degenerate triangle over {chosen}")
    return modulus, result.maps, result.certificate, result.measurements


def division_digits(value: int, m: int) -> Tuple[int, int]:
    """value = u·m + u′ with 0 ≤ u′ < m."""
    return divmod(int(value), int(m))


def approximation_report(p3: int, p4: int, p5: int, c1: float, c2: float) -> Dict:
    """
    How well uv tracks t = ⌈ȳz̄/p₄⌉ over all (ȳ, z̄) ∈ [0, p₃)².

    u = ⌊ȳ/M⌋, v = ⌊z̄/M⌋ with M = ⌊√p₄⌋; t′ = ⌈uv(p₄−p₃)/p₅⌉.
    """
    m = math.isqrt(p4)
    y = np.arange(p3, dtype=np.int64)[:, None]
    z = np.arange(p3, dtype=np.int64)[None, :]
    t = -((-(y * z)) // p4)
    uv = (y // m) * (z // m)
    t_prime = -((-(uv * (p4 - p3))) // p5)
    error = int(np.abs(t - uv).max())
    carry = int(np.abs(t_prime).max())
    a_bound, b_bound = c1 * math.sqrt(p4), c2 * math.log(p3)
    return {
        'M': m, 'max_t_minus_uv': error, 'bound_t_minus_uv': a_bound,
        'approximation_holds': error <= a_bound,
        'max_t_prime': carry, 'bound_t_prime': b_bound, 'carry_holds': carry <= b_bound,
    }


def analytic_glue_set(p3: int, p4: int, p5: int, c1: float, c2: float) -> np.ndarray:
    """Mask of {π_{p₃}(a(p₄−p₃) + p₅b) : |a| ≤ C₁√p₄, |b| ≤ C₂ log p₃}."""
    a_max, b_max = int(c1 * math.sqrt(p4)), int(c2 * math.log(p3))
    a = np.arange(-a_max, a_max + 1, dtype=np.int64)[:, None]
    b = np.arange(-b_max, b_max + 1, dtype=np.int64)[None, :]
    mask = np.zeros(p3, dtype=bool)
    mask[np.mod(a * (p4 - p3) + p5 * b, p3).reshape(-1)] = True
    return mask


def _five_prime_rules(c: Coefficients, lin: LinearPart, primes: Sequence[int]) -> Dict[int, Dict[int, VarMap]]:
    c1, c2, c3, c4, c5, _ = c
    p1, p2, p3, p4, p5 = primes
    rules = _three_prime_rules(c, lin, primes)
    m = math.isqrt(p4)
    kappa = (c3 - c2) * (c4 - c5)
    residues = np.arange(p3, dtype=np.int64)
    u_table = np.mod(residues // m, p5)
    v_table = np.mod(kappa * (residues // m) * (p4 - p3), p5)

    rules[0][3] = affine_map(3, p4, -c1, 0)
    rules[0][4] = affine_map(4, p5, -c1, 0)
    rules[1][3] = lift_map(3, p4, (LiftTerm(2, -(c3 - c2)), LiftTerm(3, -c3)))
    rules[2][3] = lift_map(3, p4, (LiftTerm(2, c4 - c5), LiftTerm(3, -c4)))
    rules[1][4] = lift_map(4, p5, (LiftTerm(2, -1, u_table), LiftTerm(4, -c3)))
    rules[2][4] = lift_map(4, p5, (LiftTerm(2, 1, v_table), LiftTerm(4, -c4)))
    return rules


def three_cycle_five_prime(expr: Expression, c: Coefficients, lin: LinearPart, primes: Sequence[int],
                           c1: float = 4.0, c2: float = 4.0, joint_limit: int = 10 ** 7,
                           constant_c: Optional[float] = None
                           ) -> Tuple[Modulus, MapSet, Certificate, Dict]:
    """
    Five-prime identification for c₁ = c₆ with (c₃−c₂)(c₄−c₅) ≠ 0.

    Coordinates 3 and 4 carry −κ·ȳ₃z̄₃ mod p₄ and −κ·uv(p₄−p₃) mod p₅,
    κ = (c₃−c₂)(c₄−c₅), so the three products telescope into a set of
    multiples of p₄−p₃ and p₅ around 0 mod p₃.

    Args:
        expr: Normalized triangle
        c: Shifts c₁..c₆
        lin: Linear part
        primes: Five primes; sorted ascending, 2·p₁ > p₅ required
        c1, c2: Constants of the approximation bounds
        constant_c: C' small-value constant, passed to the identification engine

    Raises:
        PreconditionError: If the coefficient conditions fail
        PrimeError: If the primes do not fit one window
    """
    if c[0] != c[5]:
        raise PreconditionError("five-prime triangle needs c₁ = c₆")
    if (c[2] - c[1]) * (c[3] - c[4]) == 0:
        raise PreconditionError("(c₃−c₂)(c₄−c₅) = 0 belongs to the degenerate construction")
    if len(primes) < 5:
        raise PrimeError(f"need five primes, got {len(primes)}")
    chosen = sorted(int(p) for p in primes[:5])
    check_ordering(chosen)
    modulus = Modulus.of(chosen, expr.coefficients())
    p3, p4, p5 = chosen[2:]

    result = identify(expr, modulus, OWNERS, _five_prime_rules(c, lin, chosen), 2, joint_limit, constant_c)
    glue = analytic_glue_set(p3, p4, p5, c1, c2)
    report = approximation_report(p3, p4, p5, c1, c2)
    cross = result.cross_values
    measurements = {
        **result.measurements, **report,
        'glue_set_size': int(glue.sum()),
        'cross_within_glue_set': bool(glue[cross].all()),
    }
    logger.info(f"five-prime triangle over {chosen}: |S₁| = {int(glue.sum())}, "
                f"cross set {cross.size}, max |t − uv| = {report['max_t_minus_uv']}")
    return modulus, result.maps, result.certificate, measurements
