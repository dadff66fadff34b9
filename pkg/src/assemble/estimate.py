"""
Size estimates for a staged assembly, computed without building anything.

Stage one is laid out exactly as assemble() lays it out. For a later stage s
the number of cases is the falling factorial Q_{s−1}(Q_{s−1}−1)…, each case
holding one block per expression. Strict mode needs every block to certify
a fraction of at most (ε_s − ε_{s−1}) / (M·L) of its sub-modulus.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..construct.single_var import alpha_coefficients, coordinates_needed
from ..core.settings import Settings, get_settings
from ..expr.parser import format_expression
from ..residue.primes import next_primes
from .cases import falling_factorial
from .plan import ExpressionPlan, fitted_schedule

logger = logging.getLogger(__name__)

EXACT_PREFIX_COORDINATES = 4096
CODE_LIMIT = 2 ** 62


class PrimePool:
    """Distinct primes handed out once each, base primes first."""

    def __init__(self, base: Sequence[int]):
        self._queue: List[int] = [int(p) for p in base]
        self._top = max(self._queue, default=2)
        self.used: List[int] = []

    @property
    def top(self) -> int:
        return self._top

    def _extend(self) -> None:
        more = next_primes(self._top + 1, 64)
        self._queue.extend(more)
        self._top = more[-1]

    def take(self, count: int, minimum: int = 3, coprime_to: int = 1) -> List[int]:
        """The first `count` queued primes ≥ minimum that do not divide coprime_to."""
        chosen: List[int] = []
        i = 0
        while len(chosen) < count:
            if i == len(self._queue):
                self._extend()
            p = self._queue[i]
            if p >= minimum and coprime_to % p != 0:
                chosen.append(self._queue.pop(i))
            else:
                i += 1
        self.used.extend(chosen)
        return chosen

    def fresh(self, count: int, minimum: int = 3) -> List[int]:
        """`count` primes above everything handed out or queued so far."""
        if count == 0:
            return []
        chosen = next_primes(max(self._top + 1, int(minimum)), count)
        self._top = chosen[-1]
        self.used.extend(chosen)
        return chosen


@dataclass(frozen=True)
class StageOneSlot:
    expression_index: int
    primes: Tuple[int, ...]
    linear: bool
    degree: int
    density_bound: Fraction


def _single_var_shape(expr) -> Tuple[int, int, int]:
    """(d, D, largest coefficient magnitude) of a one-variable expression."""
    coeffs = alpha_coefficients(expr)
    d = len(coeffs) - 1
    D = max(f.degree() for f in coeffs if not f.is_zero)
    magnitude = max(abs(int(c)) for f in coeffs for c in f.all_coeffs())
    return d, D, magnitude


def stage_one_layout(plan: ExpressionPlan, mode: str, base_primes: Sequence[int]
                     ) -> Tuple[List[StageOneSlot], PrimePool]:
    """
    Primes for every one-variable expression, in plan order.

    Linear expressions take one prime not dividing their α coefficient.
    Quadratic ones take primes above 2d(D+1): one in relaxed mode, enough
    for density ε₁/M₁ in strict mode.
    """
    pool = PrimePool(base_primes)
    stage = plan.stage(1) if plan.n_stages else []
    share = plan.stage_one_target / max(1, len(stage)) if stage else Fraction(1)
    slots: List[StageOneSlot] = []
    for index, expr in stage:
        if plan.is_linear(index):
            lin = expr.linear_of(0)
            p = pool.take(1, minimum=max(abs(lin.lam), abs(lin.mu)) + 1, coprime_to=lin.lam)[0]
            slots.append(StageOneSlot(index, (p,), True, 1, Fraction(1, p)))
            continue
        d, D, magnitude = _single_var_shape(expr)
        t = 1 if mode == 'relaxed' else coordinates_needed(d, share)
        primes = tuple(pool.take(t, minimum=max(2 * d * (D + 1), magnitude) + 1))
        slots.append(StageOneSlot(index, primes, False, d, Fraction(2 * d - 1, 2 * d) ** t))
    return slots, pool


def fit_schedule(plan: ExpressionPlan, mode: str, base_primes: Sequence[int], schedule: str) -> ExpressionPlan:
    """
    The plan under the named schedule.

    'fitted' sets ε₁ to the stage-one bound the base primes achieve and
    splits ε − ε₁ evenly over the later stages. When that bound already
    reaches ε the linear schedule is kept and stage one is reported as is.
    """
    if schedule != 'fitted' or plan.n_stages < 2:
        return plan
    slots, _ = stage_one_layout(plan, mode, base_primes)
    achieved = sum((s.density_bound for s in slots), Fraction(0))
    if not 0 < achieved < plan.epsilon:
        logger.warning(f"stage-one bound {float(achieved):.4f} leaves no room below ε = {float(plan.epsilon)}; "
                       f"keeping the linear schedule")
        return plan
    fitted = plan.with_schedule(fitted_schedule(plan.epsilon, achieved, plan.n_stages))
    shown = ', '.join(f"{float(e):.4f}" for e in fitted.schedule)
    logger.info(f"fitted schedule: {shown}")
    return fitted


def _prime_after(start: float, count: float) -> float:
    """Rough size of the count-th prime above start."""
    if count <= 0:
        return start
    return start + count * math.log(max(start + count * math.log(max(start, 3.0)), 3.0))


def handler_width(expr, settings: Settings) -> int:
    """Number of primes the handler for this expression's case builds over by default."""
    from ..construct.handler_factory import get_handler
    from ..expr.classify import classify

    handler = get_handler(classify(expr).tag, settings)
    return len(handler.resolve_primes(None))


@dataclass
class StageEstimate:
    stage: int
    expressions: int
    case_count: Optional[int]
    case_count_log2: float
    width: int
    coordinates: Optional[int]
    coordinates_log2: float
    min_prime: Optional[int]
    modulus_bits: float
    budget: Fraction
    required_fraction_log10: float
    linear: bool
    feasible: bool
    reason: Optional[str] = None

    @property
    def required_fraction(self) -> float:
        return 10.0 ** self.required_fraction_log10 if self.required_fraction_log10 > -300 else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'stage': self.stage,
            'expressions': self.expressions,
            'case_count': None if self.case_count is None else str(self.case_count),
            'case_count_log2': round(self.case_count_log2, 3),
            'width': self.width,
            'coordinates': None if self.coordinates is None else str(self.coordinates),
            'coordinates_log2': round(self.coordinates_log2, 3),
            'min_prime': self.min_prime,
            'modulus_bits': round(self.modulus_bits, 3),
            'budget': str(self.budget),
            'required_fraction': self.required_fraction,
            'required_fraction_log10': round(self.required_fraction_log10, 3),
            'linear': self.linear,
            'feasible': self.feasible,
            'reason': self.reason,
        }


@dataclass
class Estimate:
    mode: str
    plan: ExpressionPlan
    stages: List[StageEstimate] = field(default_factory=list)
    stage_one_primes: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return all(s.feasible for s in self.stages)

    @property
    def total_coordinates(self) -> Optional[int]:
        if any(s.coordinates is None for s in self.stages):
            return None
        return sum(s.coordinates for s in self.stages)

    def first_failure(self) -> Optional[StageEstimate]:
        return next((s for s in self.stages if not s.feasible), None)

    def to_dict(self) -> Dict[str, Any]:
        total = self.total_coordinates
        return {
            'mode': self.mode,
            'plan': self.plan.to_dict(),
            'stage_one_primes': [{'expression': e, 'primes': list(p)} for e, p in self.stage_one_primes],
            'stages': [s.to_dict() for s in self.stages],
            'total_coordinates': None if total is None else str(total),
            'feasible': self.feasible,
        }


def estimate(plan: ExpressionPlan, mode: Optional[str] = None, base_primes: Optional[Sequence[int]] = None,
             settings: Settings = None, schedule: Optional[str] = None) -> Estimate:
    """
    Predicted case counts, coordinates and modulus size per stage.

    Args:
        plan: Staged expressions
        mode: 'strict' or 'relaxed' (settings default when omitted)
        base_primes: Stage-one primes (settings default when omitted)
        settings: Application settings
        schedule: 'linear' or 'fitted' (settings default when omitted)

    Returns:
        Estimate; `feasible` says whether assemble() would go through in this mode
    """
    settings = settings or get_settings()
    mode = mode or settings.assembly.mode
    base = tuple(base_primes or settings.assembly.base_prime_list)
    limit = settings.assembly.max_coordinates
    plan = fit_schedule(plan, mode, base, schedule or settings.assembly.schedule)
    result = Estimate(mode, plan)

    slots, pool = stage_one_layout(plan, mode, base)
    primes_one = [p for slot in slots for p in slot.primes]
    result.stage_one_primes = [(format_expression(plan.expressions[s.expression_index]), s.primes) for s in slots]
    density_one = sum((s.density_bound for s in slots), Fraction(0))
    feasible_one = mode == 'relaxed' or density_one <= plan.schedule[0]
    modulus_bits = sum(math.log2(p) for p in primes_one)
    result.stages.append(StageEstimate(
        stage=1, expressions=len(slots), case_count=None, case_count_log2=0.0, width=1,
        coordinates=len(primes_one), coordinates_log2=math.log2(max(1, len(primes_one))),
        min_prime=min(primes_one, default=None), modulus_bits=modulus_bits, budget=plan.stage_budget(1),
        required_fraction_log10=math.log10(plan.stage_budget(1)) - math.log10(max(1, len(slots))),
        linear=all(s.linear for s in slots), feasible=feasible_one,
        reason=None if feasible_one else f"stage-one density bound {float(density_one):.4f} > ε₁ = {float(plan.schedule[0]):.4f}",
    ))

    q_exact: Optional[int] = math.prod(primes_one) if len(primes_one) <= EXACT_PREFIX_COORDINATES else None
    used = len(primes_one)
    top = float(pool.top)
    for s in range(2, plan.n_stages + 1):
        members = plan.stage(s)
        m = len(members)
        budget = plan.stage_budget(s)
        if m == 0:
            result.stages.append(StageEstimate(s, 0, 0, 0.0, 0, 0, 0.0, None, modulus_bits, budget, 0.0, True, True))
            continue
        linear = all(plan.is_linear(i) for i, _ in members)
        width = 1 if linear else max(handler_width(e, settings) for _, e in members)

        if q_exact is not None:
            count = falling_factorial(q_exact, s)
            count_log2 = math.log2(count) if count else 0.0
        else:
            count = None
            count_log2 = s * modulus_bits
        coords = None if count is None else count * m * width
        coords_log2 = count_log2 + math.log2(m * width)
        required_log10 = math.log10(budget) - math.log10(m) - count_log2 * math.log10(2)

        # strict blocks: 1/r for singleton certificates, basic identification's K/r otherwise
        factor = 1 if linear else settings.construction.basic_ident_k
        threshold_log2 = math.log2(factor * m) + count_log2 - math.log2(budget)
        if mode == 'strict':
            min_prime = int(math.ceil(2 ** threshold_log2)) if threshold_log2 < 62 else None
            start = max(top + 1, float(min_prime)) if min_prime is not None else None
        else:
            min_prime = int(top) + 1
            start = top + 1

        reasons = []
        if coords is None or used + coords > limit:
            reasons.append(f"needs 2^{coords_log2:.1f} coordinates, budget {limit:,}")
        if start is None:
            reasons.append(f"case primes above 2^{threshold_log2:.1f}")
        elif coords is not None:
            largest = _prime_after(start, coords)
            if largest > settings.assembly.max_case_prime:
                reasons.append(f"case primes reach ≈{largest:.3g} > {settings.assembly.max_case_prime:,}")
        if q_exact is None or q_exact > CODE_LIMIT:
            reasons.append("Q_{s−1} exceeds the 62-bit case code range")
        feasible = not reasons

        if coords is not None and start is not None:
            bits = coords * math.log2(_prime_after(start, coords / 2))
            top = _prime_after(start, coords)
        else:
            bits = 2 ** min(coords_log2, 1000) * max(threshold_log2, math.log2(max(top, 3.0)))
        modulus_bits += bits
        used += coords if coords is not None else 0
        q_exact = None
        result.stages.append(StageEstimate(
            stage=s, expressions=m, case_count=count, case_count_log2=count_log2, width=width,
            coordinates=coords, coordinates_log2=coords_log2, min_prime=min_prime, modulus_bits=modulus_bits,
            budget=budget, required_fraction_log10=required_log10, linear=linear, feasible=feasible,
            reason='; '.join(reasons) or None,
        ))

    for stage in result.stages:
        marker = 'ok' if stage.feasible else f'infeasible ({stage.reason})'
        logger.info(f"stage {stage.stage}: {stage.expressions} expressions, "
                    f"2^{stage.coordinates_log2:.1f} coordinates, {marker}")
    return result
