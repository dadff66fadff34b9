"""
A repeated edge plus a single edge on the shared vertex:

    E = αβ + (α+c₁x)(β+c₂y) + αγ + λ₁α + μ₁x + λ₂β + μ₂y + λ₃γ + μ₃z,  c₁, c₂ ∈ {±1}.

With A = c₂μ₂ − λ₂ and B = −μ₁c₁ the affine maps α = A, β = −c₂y + B kill
the x and y terms. If A + λ₃ ≠ 0, γ cancels z too and E is constant.

Otherwise two primes q < p < 2q are used. Over p, α₁ = A − c₂ leaves y₁ with
coefficient 1 and γ₁ turns the z terms into −t, t = ι_q(μ₃z₂), so that
E₁ = y₁ − t. Over q, γ₂ = 0 and E₂ = block(x₂, y₂) + t with β₂ chosen from
an evading family indexed by y₁. If E = (r, −r) with 0 ≤ r < p − q then
y₁ = t + r as integers, hence block + y₁ ≡ 0 mod q, which the family forbids.
"""

import logging
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..construct.certificate import AvoidedValues, Certificate, ExactValueSet
from ..construct.varmap import (
    ComposedTable, LiftCombination, LiftTerm, MapSet, VarMap, affine_map, lift_map, table_map, zero_map,
)
from ..core.exceptions import BudgetExceededError, CertificateViolation, PreconditionError, PrimeError
from ..core.settings import Settings, get_settings
from ..expr.model import Expression
from ..residue import Modulus, inverse
from ..verify.image import image_exhaustive
from .evading import evading_family, evading_feasible
from .rng import RetryPolicy, RngSpec

logger = logging.getLogger(__name__)


def _coefficients(params: Dict[str, int]) -> Dict[str, int]:
    out = {k: int(params.get(k, 0)) for k in ('lam1', 'lam2', 'lam3', 'mu1', 'mu2', 'mu3')}
    out['c1'], out['c2'] = int(params['c1']), int(params['c2'])
    if out['c1'] not in (-1, 1) or out['c2'] not in (-1, 1):
        raise PreconditionError(f"c₁, c₂ must be ±1, got {out['c1']}, {out['c2']}")
    return out


def affine_constants(params: Dict[str, int]) -> Tuple[int, int]:
    """(A, B) = (c₂μ₂ − λ₂, −μ₁c₁) as integers."""
    n = _coefficients(params)
    return n['c2'] * n['mu2'] - n['lam2'], -n['mu1'] * n['c1']


def final_pq_simple(expr: Expression, params: Dict[str, int],
                    primes: Sequence[int]) -> Tuple[Modulus, MapSet, Certificate, Dict[str, Any]]:
    """
    α = A, β = −c₂y + B, γ = −μ₃(A+λ₃)⁻¹z on every prime; E is constant.

    Raises:
        PreconditionError: If A + λ₃ vanishes modulo some prime
    """
    n = _coefficients(params)
    modulus = Modulus.of(primes, expr.coefficients())
    a, b = affine_constants(params)
    alpha, beta, gamma, constants = [], [], [], []
    for i, p in enumerate(modulus.values):
        if (a + n['lam3']) % p == 0:
            raise PreconditionError(f"A + λ₃ = {a + n['lam3']} vanishes mod {p}; use the two-prime construction")
        alpha.append(affine_map(i, p, 0, a))
        beta.append(affine_map(i, p, -n['c2'], b))
        gamma.append(affine_map(i, p, -n['mu3'] * inverse(a + n['lam3'], p, coordinate=i), 0))
        constants.append((2 * a * b + n['lam1'] * a + n['lam2'] * b) % p)
    maps = MapSet(modulus, {0: tuple(alpha), 1: tuple(beta), 2: tuple(gamma)})
    certificate = ExactValueSet(modulus.values, np.array([constants], dtype=np.int64))
    logger.info(f"affine solution over {modulus.values}: A={a}, B={b}, constant {constants}")
    return modulus, maps, certificate, {'A': a, 'B': b, 'constant': constants}


def designated_values(p: int, q: int) -> np.ndarray:
    """Rows (r mod p, −r mod q) for 0 ≤ r < p − q."""
    r = np.arange(p - q, dtype=np.int64)
    return np.stack([r % p, (-r) % q], axis=1)


def final_pq(expr: Expression, params: Dict[str, int], p: int, q: int, rng: RngSpec, policy: RetryPolicy,
             budget: Optional[int] = None, settings: Settings = None
             ) -> Tuple[Modulus, MapSet, Certificate, Dict[str, Any]]:
    """
    Maps over Z_p × Z_q that miss the p − q designated values.

    Args:
        expr: The normalized expression
        params: c1, c2 and the linear part
        p: Larger prime, q < p < 2q
        q: Smaller prime
        rng: Seed specification for the evading family
        policy: Retry budget
        budget: Footprint budget for the closing exhaustive check
        settings: Application settings

    Returns:
        (modulus [p, q], maps, AvoidedValues certificate, measurements)

    Raises:
        PrimeError: If q < p < 2q fails or the family is infeasible for (p, q)
        PreconditionError: If A − c₂ + λ₃ vanishes mod p
        CertificateViolation: If the closing check finds a designated value
    """
    settings = settings or get_settings()
    n = _coefficients(params)
    if not q < p < 2 * q:
        raise PrimeError(f"need q < p < 2q, got p={p}, q={q}")
    modulus = Modulus.of((p, q), expr.coefficients())
    if not evading_feasible(p, q):
        raise PrimeError(f"|S|·q²·q! < (q−1)^q fails for |S| = {p}, q = {q}")

    a, b = affine_constants(params)
    a_shift = a - n['c2']
    kappa = a_shift + n['lam3']
    if kappa % p == 0:
        raise PreconditionError(f"A − c₂ + λ₃ = {kappa} vanishes mod {p}")
    k_inv = inverse(kappa, p)
    constant = 2 * a_shift * b + n['lam1'] * a_shift + n['lam2'] * b

    mu3_table = np.mod(n['mu3'] * np.arange(q, dtype=np.int64), q)
    gamma1 = lift_map(0, p, [LiftTerm(0, -k_inv * n['mu3'] % p), LiftTerm(1, -k_inv % p, mu3_table)],
                      -k_inv * constant % p)

    targets = np.arange(p, dtype=np.int64) % q
    family = evading_family(targets, n, q, rng, policy)
    beta2 = VarMap(1, q, composed=ComposedTable(
        own=1,
        selector=LiftCombination((LiftTerm(0, 1),)),
        selector_size=p,
        values=np.ascontiguousarray(family.beta.T),
    ))
    maps = MapSet(modulus, {
        0: (affine_map(0, p, 0, a_shift), table_map(1, q, family.alpha)),
        1: (affine_map(0, p, -n['c2'], b), beta2),
        2: (gamma1, zero_map(1, q)),
    })
    certificate = AvoidedValues(modulus.values, designated_values(p, q))
    measurements: Dict[str, Any] = {
        'D': constant % p,
        'kappa': kappa % p,
        'designated': p - q,
        'retries': family.retries,
        'claimed_size': certificate.claimed_size,
    }

    try:
        report = image_exhaustive(expr, maps, certificate, budget=budget, settings=settings)
    except BudgetExceededError as e:
        logger.warning(f"closing check over ({p}, {q}) skipped: {e}")
        measurements['verified'] = 'evading family only'
        return modulus, maps, certificate, measurements
    if report.violations:
        raise CertificateViolation(f"designated value attained over ({p}, {q})", report.witness)
    measurements.update(verified='exhaustive', footprint_points=report.domain_size, image_size=report.image_size)
    logger.info(f"two-prime construction over ({p}, {q}): image {report.image_size} ≤ {certificate.claimed_size}")
    return modulus, maps, certificate, measurements
