"""
Expression plans: the canonical expressions of lA² + kA grouped into stages.

Stage s holds the expressions with exactly s variables. The density target
is split by an increasing schedule ε₁ < … < ε_N = ε; stage s may use the
budget ε_s − ε_{s−1}. Any strictly increasing schedule ending at ε works:
the linear one splits ε evenly, the fitted one gives stage one exactly the
bound its primes achieve and splits the rest evenly.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..core.exceptions import PreconditionError
from ..expr.canonical import canonicalize
from ..expr.enumerate import enumerate_expressions
from ..expr.model import Expression
from ..expr.parser import format_expression

logger = logging.getLogger(__name__)

MAX_L = 3


def linear_schedule(epsilon: Fraction, stages: int) -> Tuple[Fraction, ...]:
    """ε_s = ε·s/N."""
    return tuple(epsilon * s / stages for s in range(1, stages + 1))


def fitted_schedule(epsilon: Fraction, first: Fraction, stages: int) -> Tuple[Fraction, ...]:
    """ε₁ = first, then ε_s = first + (ε − first)·(s − 1)/(N − 1)."""
    if stages == 1:
        return (epsilon,)
    if not 0 < first < epsilon:
        raise PreconditionError(f"stage-one share {first} must lie strictly between 0 and ε = {epsilon}")
    return tuple(first + (epsilon - first) * (s - 1) / (stages - 1) for s in range(1, stages + 1))


@dataclass(frozen=True, eq=False)
class ExpressionPlan:
    """
    Canonical expressions sorted by variable count, with stage boundaries.

    boundaries[s] is the number of expressions with at most s variables, so
    stage s covers expressions[boundaries[s−1]:boundaries[s]].
    """

    expressions: Tuple[Expression, ...]
    boundaries: Tuple[int, ...]
    schedule: Tuple[Fraction, ...]
    epsilon: Fraction
    l: Optional[int] = None
    k: Optional[int] = None
    layout_target: Optional[Fraction] = None
    _index: Dict[Tuple, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        counts = [e.n_vars for e in self.expressions]
        if counts != sorted(counts):
            raise PreconditionError("plan expressions must be sorted by variable count")
        if self.boundaries[0] != 0 or self.boundaries[-1] != len(self.expressions):
            raise PreconditionError(f"boundaries {self.boundaries} do not span {len(self.expressions)} expressions")
        for s in range(1, len(self.boundaries)):
            if any(e.n_vars != s for e in self.expressions[self.boundaries[s - 1]:self.boundaries[s]]):
                raise PreconditionError(f"stage {s} holds an expression with another variable count")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])) or self.schedule[-1] != self.epsilon:
            raise PreconditionError(f"schedule {self.schedule} must increase strictly to ε = {self.epsilon}")
        self._index.update({e.key(): i for i, e in enumerate(self.expressions)})

    @classmethod
    def from_expressions(cls, expressions: Iterable[Expression], epsilon,
                         l: Optional[int] = None, k: Optional[int] = None) -> 'ExpressionPlan':
        """Canonicalize, deduplicate and stage an arbitrary expression list."""
        found: Dict[Tuple, Expression] = {}
        for expr in expressions:
            canon = canonicalize(expr)
            if canon.n_vars == 0:
                raise PreconditionError(f"expression {format_expression(expr)} has no variables")
            found.setdefault(canon.key(), canon)
        ordered = sorted(found.values(), key=lambda e: (e.n_vars, e.key()))
        stages = ordered[-1].n_vars
        boundaries = tuple(sum(1 for e in ordered if e.n_vars <= s) for s in range(stages + 1))
        eps = epsilon if isinstance(epsilon, Fraction) else Fraction(str(epsilon))
        if not 0 < eps < 1:
            raise PreconditionError(f"ε must lie in (0, 1), got {epsilon}")
        return cls(tuple(ordered), boundaries, linear_schedule(eps, stages), eps, l, k)

    @property
    def n_stages(self) -> int:
        return len(self.boundaries) - 1

    @property
    def stage_one_target(self) -> Fraction:
        """ε₁ that sizes the stage-one blocks; kept when the plan is rescheduled."""
        return self.layout_target if self.layout_target is not None else self.schedule[0]

    def with_schedule(self, schedule: Tuple[Fraction, ...]) -> 'ExpressionPlan':
        """Same expressions under another schedule."""
        return ExpressionPlan(self.expressions, self.boundaries, tuple(schedule), self.epsilon,
                              self.l, self.k, self.stage_one_target)

    def stage(self, s: int) -> List[Tuple[int, Expression]]:
        """(plan index, expression) pairs of stage s."""
        lo, hi = self.boundaries[s - 1], self.boundaries[s]
        return [(i, self.expressions[i]) for i in range(lo, hi)]

    def stage_budget(self, s: int) -> Fraction:
        """ε_s − ε_{s−1}."""
        return self.schedule[s - 1] - (self.schedule[s - 2] if s > 1 else Fraction(0))

    def index_of(self, expr: Expression) -> Optional[int]:
        """Plan index of a canonical expression, None when absent."""
        return self._index.get(expr.key())

    def is_linear(self, index: int) -> bool:
        expr = self.expressions[index]
        return not expr.terms and all(lin.lam for lin in expr.linear)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'l': self.l, 'k': self.k,
            'epsilon': str(self.epsilon),
            'schedule': [str(e) for e in self.schedule],
            'stage_one_target': str(self.stage_one_target),
            'boundaries': list(self.boundaries),
            'expressions': [format_expression(e) for e in self.expressions],
        }


def plan(l: int, k: int, epsilon) -> ExpressionPlan:
    """
    Every canonical expression of lA² + kA, staged by variable count.

    Args:
        l: Quadratic summands, at most 3
        k: Linear summands
        epsilon: Overall density target in (0, 1)

    Raises:
        PreconditionError: If l is out of range or l + k < 1
    """
    if not 0 <= l <= MAX_L:
        raise PreconditionError(f"l must lie in 0..{MAX_L}, got {l}")
    result = ExpressionPlan.from_expressions(enumerate_expressions(l, k), epsilon, l, k)
    logger.info(f"plan l={l}, k={k}: {len(result.expressions)} expressions over {result.n_stages} stages")
    return result
