"""
Affine maps that make a repeated-edge block constant.

The two-term normalized block αβ + (α+ν₁x)(β+ν₂y) has closed formulas with
a free parameter c; a general block Σ w_t(α+a_t x)(β+b_t y) is solvable by
affine maps whenever its coefficient matrix [[W, Σwb], [Σwa, Σwab]] is
invertible mod p.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from ..core.exceptions import PreconditionError
from ..residue import inverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineSolution:
    """α(x) = a·x + b, β(y) = c·y + d; the block then equals `constant`."""

    a: int
    b: int
    c: int
    d: int
    constant: int


def affine_solve(nu1: int, nu2: int, lam1: int, lam2: int, mu1: int, mu2: int,
                 p: int, c: int = 0) -> AffineSolution:
    """
    Constant solution of αβ + (α+ν₁x)(β+ν₂y) + λ₁α + μ₁x + λ₂β + μ₂y over Z_p.

    Args:
        nu1, nu2: Shift differences, non-zero mod p
        lam1, lam2, mu1, mu2: Linear coefficients
        p: Prime
        c: Starting value of the free parameter; advanced while 2c + ν₂ ≡ 0

    Raises:
        PreconditionError: If ν₁ or ν₂ vanishes mod p
    """
    if nu1 % p == 0 or nu2 % p == 0:
        raise PreconditionError(f"shift differences ({nu1}, {nu2}) must be non-zero mod {p}")
    while (2 * c + nu2) % p == 0:
        c += 1
    den = inverse(2 * c + nu2, p)
    b = -(lam2 * c + mu2) * den % p
    a = -(nu1 * c + nu1 * nu2) * den % p
    d = (mu1 * (2 * c + nu2) - lam1 * nu1 * (c + nu2)) * inverse(nu1 * nu2, p) % p
    constant = (2 * b * d + lam1 * b + lam2 * d) % p
    return AffineSolution(a, b, c % p, d, constant)


def solve_bilinear_block(terms: Sequence[Tuple[int, int, int]], lam1: int, mu1: int,
                         lam2: int, mu2: int, p: int) -> AffineSolution:
    """
    Constant solution of Σ w_t(α+a_t x)(β+b_t y) + λ₁α + μ₁x + λ₂β + μ₂y.

    Args:
        terms: (w, a, b) triples
        lam1, mu1, lam2, mu2: Linear coefficients
        p: Prime

    Raises:
        PreconditionError: If the coefficient matrix is singular mod p
    """
    W = sum(w for w, _, _ in terms)
    Sa = sum(w * a for w, a, _ in terms)
    Sb = sum(w * b for w, _, b in terms)
    Sab = sum(w * a * b for w, a, b in terms)
    if (W * Sab - Sa * Sb) % p == 0:
        raise PreconditionError(f"block factorizes mod {p}; it is not a repeated edge")

    C = 0
    while (W * C + Sb) % p == 0:
        C += 1
    den = inverse(W * C + Sb, p)
    A = -(C * Sa + Sab) * den % p
    B = -(lam2 * C + mu2) * den % p
    D = -(lam1 * A + mu1) * inverse(W * A + Sa, p) % p
    constant = (W * B * D + lam1 * B + lam2 * D) % p
    return AffineSolution(A, B, C, D, constant)
