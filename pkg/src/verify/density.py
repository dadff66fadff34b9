"""
Analytic density bounds from certificates.

The image of lA² + kA is covered by the images of the canonical expressions,
so Σ claimed_i / Q bounds its density. Small sums are exact rationals; large
families of same-shaped terms (one per case coordinate of a staged build)
are folded into a rational upper bound plus a float estimate.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class DensityTerm:
    label: str
    claimed: int
    q: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.claimed, self.q)

    def to_dict(self) -> Dict[str, Any]:
        return {'label': self.label, 'claimed': str(self.claimed), 'q': str(self.q),
                'fraction': float(self.fraction)}


@dataclass
class BulkTerm:
    """
    count terms claimed_i / r_i folded together.

    upper = count · max(claimed) / min(r) is exact; estimate is the float sum.
    """

    label: str
    count: int
    upper: Fraction
    estimate: float

    @classmethod
    def of(cls, label: str, claimed: Sequence[int], moduli: Sequence[int]) -> 'BulkTerm':
        claimed = np.asarray(claimed, dtype=np.float64)
        moduli = np.asarray(moduli, dtype=np.float64)
        count = int(moduli.size)
        if count == 0:
            return cls(label, 0, Fraction(0), 0.0)
        upper = Fraction(count * int(claimed.max()), int(moduli.min()))
        return cls(label, count, upper, math.fsum((claimed / moduli).tolist()))

    def to_dict(self) -> Dict[str, Any]:
        return {'label': self.label, 'count': self.count, 'upper': f"{self.upper.numerator}/{self.upper.denominator}",
                'upper_float': float(self.upper), 'estimate': self.estimate}


@dataclass
class DensityReport:
    terms: List[DensityTerm] = field(default_factory=list)
    target: Fraction = None
    bulk: List[BulkTerm] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not self.bulk

    @property
    def bound(self) -> Fraction:
        exact = sum((t.fraction for t in self.terms), Fraction(0))
        return exact + sum((b.upper for b in self.bulk), Fraction(0))

    @property
    def estimate(self) -> float:
        return float(sum((t.fraction for t in self.terms), Fraction(0))) + math.fsum(b.estimate for b in self.bulk)

    @property
    def vacuous(self) -> bool:
        return self.bound >= 1

    @property
    def meets_target(self) -> bool:
        return self.target is None or self.bound <= self.target

    def to_dict(self, max_terms: int = 64) -> Dict[str, Any]:
        bound = self.bound
        return {
            'bound': f"{bound.numerator}/{bound.denominator}" if bound.denominator < 10 ** 30 else None,
            'bound_float': float(bound),
            'exact': self.exact,
            'estimate': self.estimate,
            'vacuous': self.vacuous,
            'target': None if self.target is None else float(self.target),
            'meets_target': self.meets_target,
            'term_count': len(self.terms) + sum(b.count for b in self.bulk),
            'terms': [t.to_dict() for t in self.terms[:max_terms]],
            'bulk': [b.to_dict() for b in self.bulk],
        }


def certificate_fraction(claimed_size: int, q: int) -> Fraction:
    """|Im E| / Q as claimed by one certificate."""
    return Fraction(int(claimed_size), int(q))


def density_report(entries: Iterable[Tuple[str, int, int]], target=None,
                   bulk: Iterable[BulkTerm] = ()) -> DensityReport:
    """
    Union bound over (label, claimed size, modulus) entries.

    Args:
        entries: One entry per canonical expression
        target: ε to compare against, if any
        bulk: Folded families of terms too numerous to sum exactly

    Returns:
        DensityReport whose bound is the exact rational sum when no bulk terms are given
    """
    target = None if target is None else (target if isinstance(target, Fraction) else Fraction(str(target)))
    report = DensityReport([DensityTerm(label, int(claimed), int(q)) for label, claimed, q in entries],
                           target, list(bulk))
    if report.vacuous:
        logger.warning(f"density bound {float(report.bound):.4f} is vacuous (≥ 1), estimate {report.estimate:.4f}")
    else:
        logger.info(f"density bound {float(report.bound):.6g} over {len(report.terms)} terms"
                    f"{'' if report.exact else f' and {len(report.bulk)} folded families'}")
    return report
