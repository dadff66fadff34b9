"""
Random elements of lA² + kA over an assembled cover, checked against their certificates.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.exceptions import CertificateViolation, PreconditionError
from ..expr.canonical import canonicalize_with_map
from ..expr.model import Atom, Expression, Linear, Term
from ..expr.parser import format_expression
from .assembler import CoverSet, RouteResult

logger = logging.getLogger(__name__)


@dataclass
class SampledElement:
    value: np.ndarray
    expression_index: int
    expression: str
    route: RouteResult

    @property
    def passed(self) -> bool:
        return self.route.passed

    def to_dict(self, head: int = 16) -> Dict[str, Any]:
        return {'expression': self.expression, 'route': self.route.to_dict(),
                'value_head': self.value[:head].tolist()}


def _draw_labels(l: int, k: int, rng: np.random.Generator, repeat_probability: float) -> List[int]:
    """
    Input label per summand slot; repeats make equal inputs.

    With l ≥ 1 the linear slots reuse inputs of the quadratic ones: linear
    summands on fresh inputs are not part of the staged plan.
    """
    labels: List[int] = []
    for slot in range(2 * l + k):
        if l and slot >= 2 * l:
            labels.append(int(rng.choice(labels[:2 * l])))
        elif labels and rng.random() < repeat_probability:
            labels.append(int(rng.choice(labels)))
        else:
            labels.append(max(labels, default=-1) + 1)
    return labels


def sample_sum_element(cover: CoverSet, l: int, k: int, rng: np.random.Generator,
                       repeat_probability: float = 0.25, raise_on_violation: bool = True) -> SampledElement:
    """
    Draw one element of lA² + kA and check the certificate it routes to.

    Args:
        cover: Assembled set
        l: Quadratic summands
        k: Linear summands
        rng: Generator for inputs, shifts and repeats
        repeat_probability: Chance that a slot reuses an earlier input
        raise_on_violation: Raise instead of returning a failed check

    Returns:
        SampledElement with the value and its route

    Raises:
        CertificateViolation: If the value escapes its certificate
    """
    labels = _draw_labels(l, k, rng, repeat_probability)
    shifts = rng.integers(0, 2, size=len(labels)).tolist()
    primes = cover.modulus.primes
    xs = cover.modulus.random_elements(rng, max(labels) + 1)
    phi = cover.phi.evaluate(xs)
    atoms = [np.mod(phi[a] + s * xs[a], primes) for a, s in zip(labels, shifts)]

    value = np.zeros(primes.size, dtype=np.int64)
    terms, linear = [], []
    for i in range(l):
        a, b = 2 * i, 2 * i + 1
        value = np.mod(value + atoms[a] * atoms[b] % primes, primes)
        terms.append(Term(1, (Atom(labels[a], shifts[a]), Atom(labels[b], shifts[b]))))
    for slot in range(2 * l, len(labels)):
        value = np.mod(value + atoms[slot], primes)
        linear.append(Linear(labels[slot], 1, shifts[slot]))

    canon, mapping = canonicalize_with_map(Expression(tuple(terms), tuple(linear)))
    index = cover.plan.index_of(canon)
    if index is None:
        raise PreconditionError(f"sampled expression {format_expression(canon)} is not in the plan")
    inputs = xs[sorted(mapping, key=mapping.get)]
    route = cover.route(index, inputs, value)
    sample = SampledElement(value, index, format_expression(canon), route)
    if not route.passed:
        logger.error(f"{sample.expression} escapes its certificate on coordinates {route.start}..{route.stop}")
        if raise_on_violation:
            raise CertificateViolation(f"sampled element of {sample.expression} outside its certificate",
                                       sample.to_dict())
    return sample


@dataclass
class SumSampleReport:
    checked: int
    failures: int
    merged: int
    by_stage: Dict[int, int] = field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        out = {'checked': self.checked, 'failures': self.failures, 'merged': self.merged,
               'by_stage': {str(s): c for s, c in sorted(self.by_stage.items())}, 'passed': self.passed}
        if self.witness:
            out['witness'] = self.witness
        return out


def sample_sum_elements(cover: CoverSet, l: int, k: int, rng: np.random.Generator, count: int,
                        repeat_probability: float = 0.25) -> SumSampleReport:
    """Falsification run: `count` sampled sum elements, every one routed and checked."""
    failures, merged, witness = 0, 0, None
    stages: Counter = Counter()
    for _ in range(count):
        sample = sample_sum_element(cover, l, k, rng, repeat_probability, raise_on_violation=False)
        stages[sample.route.stage] += 1
        merged += len(sample.route.path) > 1
        if not sample.passed:
            failures += 1
            witness = witness or sample.to_dict()
    logger.info(f"{count} sampled elements of {l}A²+{k}A: {failures} violations, {merged} merged routes")
    return SumSampleReport(count, failures, merged, dict(stages), witness)
