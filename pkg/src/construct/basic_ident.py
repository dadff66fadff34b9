"""
Basic identification of two coordinates for λ₀αβ + λ₁α + μ₁x + λ₂β + μ₂y.

Over Z_p ⊕ Z_q (p ≤ q) α vanishes on the first coordinate and β on the
second; the remaining maps read the other coordinate through mod_{q,p} and
mod_{p,q}, so the two coordinates become μ₁(x₁ − ι(y₂)) and μ₂(y₂ − ι(x₁)).
Their lifts, rescaled by μ⁻¹, always sum to kp + jq with 0 ≤ k ≤ ⌈q/p⌉,
j ∈ {0, 1}.

λ₀ only selects the branch. Once α ≡ 0 on the first coordinate and β ≡ 0 on
the second, λ₀αβ vanishes on both, so no λ₀⁻¹ rescaling is needed and the
maps and certificate are the same for every unit λ₀.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..core.exceptions import PreconditionError
from ..residue import inverse
from .certificate import Certificate, ExactValueSet, LinearFunctionalMembership
from .varmap import LiftTerm, VarMap, affine_map, lift_map, zero_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentifiedPair:
    """Maps of x (variable a) and y (variable b) on [p, q], plus the certificate."""

    alpha: Tuple[VarMap, VarMap]
    beta: Tuple[VarMap, VarMap]
    certificate: Certificate
    branch: str


def _cancel(lam: int, mu: int, target: int, prime: int) -> VarMap:
    if mu % prime == 0:
        return zero_map(target, prime)
    if lam % prime == 0:
        raise PreconditionError("a variable carries μ ≠ 0 with λ = 0")
    return affine_map(target, prime, -mu * inverse(lam, prime, target), 0)


def identification_set(p: int, q: int) -> np.ndarray:
    """Boolean mask over [0, p+q−2] of {kp + jq : 0 ≤ k ≤ ⌈q/p⌉, j ∈ {0,1}}."""
    mask = np.zeros(p + q - 1, dtype=bool)
    for k in range(math.ceil(q / p) + 1):
        for j in (0, 1):
            s = k * p + j * q
            if s < mask.size:
                mask[s] = True
    return mask


def basic_ident(lam0: int, lam1: int, mu1: int, lam2: int, mu2: int, p: int, q: int,
                offset: Optional[Tuple[int, int]] = None, size_factor: Optional[int] = None) -> IdentifiedPair:
    """
    Maps for λ₀αβ + λ₁α + μ₁x + λ₂β + μ₂y over [p, q].

    Args:
        lam0..mu2: Coefficients
        p, q: Primes with p ≤ q
        offset: Constants already added to each coordinate by other blocks
        size_factor: K; the claimed size must stay within K·q (unchecked when None)

    Raises:
        PreconditionError: If λ_i = 0 while μ_i ≠ 0, p > q, or the claim exceeds K·q
    """
    if p > q:
        raise PreconditionError(f"basic identification expects p ≤ q, got ({p}, {q})")
    for lam, mu in ((lam1, mu1), (lam2, mu2)):
        if lam == 0 and mu != 0:
            raise PreconditionError("λ = 0 requires μ = 0")
    primes = (p, q)
    offset = offset or (0, 0)

    def exact(branch: str) -> Certificate:
        return ExactValueSet(primes, np.array([[offset[0] % p, offset[1] % q]], dtype=np.int64))

    if lam0 % p == 0 or lam0 % q == 0:
        alpha = tuple(_cancel(lam1, mu1, i, r) for i, r in enumerate(primes))
        beta = tuple(_cancel(lam2, mu2, i, r) for i, r in enumerate(primes))
        return IdentifiedPair(alpha, beta, exact('no_product'), 'no_product')
    if mu1 == 0:
        alpha = (zero_map(0, p), zero_map(1, q))
        beta = tuple(_cancel(lam2, mu2, i, r) for i, r in enumerate(primes))
        return IdentifiedPair(alpha, beta, exact('mu1_zero'), 'mu1_zero')
    if mu2 == 0:
        alpha = tuple(_cancel(lam1, mu1, i, r) for i, r in enumerate(primes))
        beta = (zero_map(0, p), zero_map(1, q))
        return IdentifiedPair(alpha, beta, exact('mu2_zero'), 'mu2_zero')

    # coordinate 0: α ≡ 0, β₁ = −λ₂⁻¹(μ₁·mod_{q,p}(y₂) + μ₂y₁)
    inv2 = inverse(lam2, p, 0)
    beta1 = lift_map(0, p, (LiftTerm(1, -inv2 * mu1 % p), LiftTerm(0, -inv2 * mu2 % p)))
    # coordinate 1: β ≡ 0, α₂ = −λ₁⁻¹(μ₂·mod_{p,q}(x₁) + μ₁x₂)
    inv1 = inverse(lam1, q, 1)
    alpha2 = lift_map(1, q, (LiftTerm(0, -inv1 * mu2 % q), LiftTerm(1, -inv1 * mu1 % q)))

    certificate = LinearFunctionalMembership(
        primes=primes,
        weights=(inverse(mu1, p, 0), inverse(mu2, q, 1)),
        allowed=identification_set(p, q),
        reference=None,
        offset=offset if any(offset) else None,
    )
    claimed = certificate.claimed_size
    if size_factor is not None and claimed > size_factor * q:
        raise PreconditionError(f"identified pair over ({p}, {q}) claims {claimed} > {size_factor}·{q}")
    logger.debug(f"basic identification over ({p}, {q}): claimed {claimed}")
    return IdentifiedPair((zero_map(0, p), alpha2), (beta1, zero_map(1, q)), certificate, 'identified')
