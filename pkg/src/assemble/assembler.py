"""
Staged assembly of A = {φ(x)} ∪ {φ(x) + x} over one global modulus.

A − A = Z_Q holds for any φ, since y = φ(x) and y + x both lie in A. The
work is in keeping lA² + kA small: every canonical expression E and every
input tuple must land in a designated small set on some coordinate block.

Stage one gives each one-variable expression its own block. At stage s an
s-variable expression is certified on the block of the case formed by its
inputs' residues mod Q_{s−1} when those are distinct; when two inputs
agree there, the inputs merge and the smaller expression's block, from an
earlier stage, certifies instead.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..construct.handler_factory import construct_expression
from ..construct.result import Construction
from ..core.exceptions import BudgetExceededError, InfeasibleError, PreconditionError
from ..core.settings import Settings, get_settings
from ..expr.canonical import canonicalize_with_map, merge, relabel
from ..expr.model import Expression
from ..expr.parser import format_expression
from ..verify.density import BulkTerm, DensityReport, DensityTerm, density_report
from .cases import all_cases, case_rank
from .estimate import Estimate, PrimePool, estimate, fit_schedule, handler_width, stage_one_layout
from .phi import (
    CaseStage, GenericCaseStage, LinearCaseStage, PhiMap, StageOneBlock, StagedModulus, small_inverse,
)
from .plan import ExpressionPlan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RouteResult:
    """Where one (expression, inputs) pair was certified."""

    expression_index: int
    stage: int
    start: int
    stop: int
    case: Optional[Tuple[int, ...]]
    path: Tuple[int, ...]
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'expression_index': self.expression_index, 'stage': self.stage,
            'coordinates': [self.start, self.stop],
            'case': None if self.case is None else list(self.case),
            'path': list(self.path), 'passed': self.passed,
        }


@dataclass(eq=False)
class CoverSet:
    """
    The functional set A over a staged modulus.

    Membership is never enumerated; A is known through φ and every check
    goes through element(), difference_witness() and route().
    """

    plan: ExpressionPlan
    phi: PhiMap
    mode: str
    density: DensityReport
    estimate: Estimate
    stage_bounds: List[Dict[str, Any]] = field(default_factory=list)
    measurements: Dict[str, Any] = field(default_factory=dict)

    @property
    def modulus(self) -> StagedModulus:
        return self.phi.modulus

    def element(self, x: np.ndarray, shifted: bool) -> np.ndarray:
        """φ(x), or φ(x) + x, for an (N, n) residue matrix."""
        x = np.asarray(x, dtype=np.int64)
        value = self.phi.evaluate(x)
        if shifted:
            value = np.mod(value + x, self.modulus.primes)
        return value

    def difference_witness(self, x: np.ndarray) -> np.ndarray:
        """y = φ(x): y ∈ A and y + x = φ(x) + x ∈ A."""
        return self.phi.evaluate(np.asarray(x, dtype=np.int64))

    def route(self, index: int, xs: np.ndarray, value: np.ndarray) -> RouteResult:
        """
        Check the certificate covering E_index at inputs xs.

        Args:
            index: Plan index of the canonical expression
            xs: (n_vars, n) inputs, row j for variable j
            value: E evaluated through φ at xs, an (n,) residue vector

        Returns:
            RouteResult naming the block that certified the value
        """
        path = [index]
        xs = np.asarray(xs, dtype=np.int64)
        while True:
            expr = self.plan.expressions[index]
            size = expr.n_vars
            if size == 1:
                block = self.phi.block_of(index)
                return RouteResult(index, 1, block.start, block.stop, None, tuple(path), block.contains(value))

            stage = self.phi.stage_of_size(size)
            codes = self.phi.codes(xs, stage.prefix).tolist()
            if len(set(codes)) == size:
                rank = case_rank(codes, stage.prefix_q)
                local = stage.local_index(index)
                start, stop = stage.block(rank, local)
                return RouteResult(index, size, start, stop, tuple(codes), tuple(path),
                                   stage.contains(rank, local, value))

            # equal residues mod Q_{s−1}: merge the inputs, go down a stage
            classes: Dict[int, int] = {}
            rename = {j: classes.setdefault(c, len(classes)) for j, c in enumerate(codes)}
            reps = {cls: j for j, cls in reversed(list(rename.items()))}
            canon, mapping = canonicalize_with_map(merge(relabel(expr, rename)))
            index = self.plan.index_of(canon)
            if index is None:
                raise PreconditionError(f"merged expression {format_expression(canon)} is not in the plan")
            order = sorted(mapping, key=mapping.get)
            xs = xs[[reps[cls] for cls in order]]
            path.append(index)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mode': self.mode,
            'plan': self.plan.to_dict(),
            'phi': self.phi.to_dict(),
            'density': self.density.to_dict(),
            'stage_bounds': self.stage_bounds,
            'estimate': self.estimate.to_dict(),
            'measurements': self.measurements,
        }


def _build_block(expr: Expression, primes: Sequence[int], seed: int, settings: Settings) -> Construction:
    return construct_expression(expr, primes, seed, settings)


def _linear_stage(plan: ExpressionPlan, members: List[Tuple[int, Expression]], size: int, prefix: int,
                  prefix_q: int, pool: PrimePool, mode: str, settings: Settings) -> LinearCaseStage:
    cases = all_cases(prefix_q, size)
    m = len(members)
    count = cases.shape[0] * m
    minimum = pool.top + 1
    if mode == 'strict':
        minimum = max(minimum, math.ceil(Fraction(count) / plan.stage_budget(size)))
    primes = np.array(pool.fresh(count, minimum), dtype=np.int64).reshape(cases.shape[0], m)
    if primes.size and int(primes.max()) > settings.assembly.max_case_prime:
        raise BudgetExceededError(int(primes.max()), settings.assembly.max_case_prime, 'largest case prime')

    theta = np.zeros((cases.shape[0], m, size), dtype=np.int64)
    for local, (_, expr) in enumerate(members):
        r = primes[:, local]
        for j in range(size):
            lin = expr.linear_of(j)
            theta[:, local, j] = np.mod(-lin.mu * small_inverse(lin.lam, r), r)
    logger.info(f"stage {size}: {cases.shape[0]:,} cases × {m} expressions, "
                f"case primes {int(primes.min()) if primes.size else '-'}..{int(primes.max()) if primes.size else '-'}")
    return LinearCaseStage(size, prefix, prefix_q, prefix, tuple(i for i, _ in members), cases,
                           primes=primes, theta=theta)


def _generic_stage(members: List[Tuple[int, Expression]], size: int, prefix: int, prefix_q: int,
                   pool: PrimePool, seed: int, settings: Settings) -> Tuple[GenericCaseStage, List[int]]:
    cases = all_cases(prefix_q, size)
    width = max(handler_width(e, settings) for _, e in members)
    tasks = []
    for rank in range(cases.shape[0]):
        for local, (_, expr) in enumerate(members):
            block_seed = (seed + len(tasks) * settings.random.max_retries) % 2 ** 64
            tasks.append((rank, local, expr, tuple(pool.fresh(width)), block_seed))

    built: Dict[Tuple[int, int], Construction] = {}
    workers = settings.verification.workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_build_block, expr, primes, s, settings): (rank, local)
                       for rank, local, expr, primes, s in tasks}
            for future in as_completed(futures):
                built[futures[future]] = future.result()
    else:
        for rank, local, expr, primes, s in tasks:
            built[(rank, local)] = _build_block(expr, primes, s, settings)

    layout: List[int] = []
    for rank, local, _, primes, _ in tasks:
        own = list(built[(rank, local)].modulus.values)
        layout.extend(own + [p for p in primes if p not in own])
    constructions = tuple(tuple(built[(rank, local)] for local in range(len(members)))
                          for rank in range(cases.shape[0]))
    logger.info(f"stage {size}: {len(tasks):,} generic blocks of width {width}")
    stage = GenericCaseStage(size, prefix, prefix_q, prefix, tuple(i for i, _ in members), cases,
                             width=width, constructions=constructions)
    return stage, layout


def _stage_terms(stage: CaseStage, plan: ExpressionPlan, exact_limit: int
                 ) -> Tuple[List[Tuple[str, int, int]], List[BulkTerm]]:
    if isinstance(stage, LinearCaseStage):
        moduli = stage.primes.ravel()
        if moduli.size <= exact_limit:
            return [(f"stage {stage.size} block {i}", 1, int(r)) for i, r in enumerate(moduli.tolist())], []
        return [], [BulkTerm.of(f"stage {stage.size} singleton blocks", np.ones(moduli.size), moduli)]
    claimed, moduli = [], []
    for row in stage.constructions:
        for built in row:
            claimed.append(int(built.certificate.claimed_size))
            moduli.append(int(built.modulus.q))
    if len(claimed) <= exact_limit:
        return [(f"stage {stage.size} block {i}", c, q) for i, (c, q) in enumerate(zip(claimed, moduli))], []
    return [], [BulkTerm.of(f"stage {stage.size} blocks", claimed, moduli)]


def assemble(plan: ExpressionPlan, mode: Optional[str] = None, base_primes: Optional[Sequence[int]] = None,
             seed: Optional[int] = None, settings: Settings = None, schedule: Optional[str] = None) -> CoverSet:
    """
    Build the staged modulus, φ and every block certificate.

    Args:
        plan: Staged canonical expressions
        mode: 'strict' enforces the ε schedule; 'relaxed' builds anyway and reports the bound
        base_primes: Stage-one primes (settings default when omitted)
        seed: Seed for randomized blocks (settings default when omitted)
        settings: Application settings
        schedule: 'linear' or 'fitted' (settings default when omitted)

    Returns:
        CoverSet with its density report

    Raises:
        InfeasibleError: Strict mode and the ε schedule cannot be met
        BudgetExceededError: The build needs more coordinates or larger primes than allowed
    """
    settings = settings or get_settings()
    mode = mode or settings.assembly.mode
    base = tuple(base_primes or settings.assembly.base_prime_list)
    seed = settings.random.seed if seed is None else seed
    exact_limit = settings.verification.exact_density_terms

    plan = fit_schedule(plan, mode, base, schedule or settings.assembly.schedule)
    predicted = estimate(plan, mode, base, settings, schedule='linear')
    failure = predicted.first_failure()
    if failure is not None:
        if mode == 'strict':
            raise InfeasibleError(f"strict assembly infeasible at stage {failure.stage}: {failure.reason}",
                                  predicted.to_dict())
        needed = failure.coordinates
        if needed is None:
            needed = math.ceil(2 ** min(failure.coordinates_log2, 1000))
        raise BudgetExceededError(needed, settings.assembly.max_coordinates,
                                  f"stage {failure.stage} assembly ({failure.reason})")

    slots, pool = stage_one_layout(plan, mode, base)
    primes: List[int] = []
    blocks: List[StageOneBlock] = []
    stage_entries: List[Tuple[List[Tuple[str, int, int]], List[BulkTerm]]] = []
    entries = []
    for n, slot in enumerate(slots):
        expr = plan.expressions[slot.expression_index]
        built = construct_expression(expr, slot.primes, seed + n, settings)
        start = len(primes)
        primes.extend(built.modulus.values)
        blocks.append(StageOneBlock(slot.expression_index, start, len(primes), built))
        entries.append((format_expression(expr), built.certificate.claimed_size, built.modulus.q))
    stage_entries.append((entries, []))
    stage_ends = [len(primes)]

    if mode == 'strict' and entries:
        first = density_report(entries, plan.schedule[0])
        if not first.meets_target:
            raise InfeasibleError(
                f"stage-one density {float(first.bound):.4f} exceeds ε₁ = {float(plan.schedule[0]):.4f}; "
                f"use larger base primes", predicted.to_dict())

    stages: List[CaseStage] = []
    for size in range(2, plan.n_stages + 1):
        members = plan.stage(size)
        if not members:
            stage_entries.append(([], []))
            stage_ends.append(len(primes))
            continue
        prefix = len(primes)
        if sum(math.log2(p) for p in primes) > 62:
            raise BudgetExceededError(prefix, 62, f"case codes for stage {size} (bits of Q_{size - 1})")
        prefix_q = math.prod(primes)
        if all(plan.is_linear(i) for i, _ in members):
            stage = _linear_stage(plan, members, size, prefix, prefix_q, pool, mode, settings)
            primes.extend(stage.primes.ravel().tolist())
        else:
            stage, layout = _generic_stage(members, size, prefix, prefix_q, pool,
                                           seed + 7919 * size, settings)
            primes.extend(layout)
        stages.append(stage)
        stage_entries.append(_stage_terms(stage, plan, exact_limit))
        stage_ends.append(len(primes))

    modulus = StagedModulus(np.array(primes, dtype=np.int64), tuple(stage_ends))
    phi = PhiMap(modulus, tuple(blocks), tuple(stages))

    all_entries = [e for es, _ in stage_entries for e in es]
    all_bulk = [b for _, bs in stage_entries for b in bs]
    density = density_report(all_entries, plan.epsilon, all_bulk)

    bounds, running, running_estimate = [], Fraction(0), 0.0
    for s, (es, bs) in enumerate(stage_entries, start=1):
        part = DensityReport([DensityTerm(label, int(c), int(q)) for label, c, q in es], None, bs)
        running += part.bound
        running_estimate += part.estimate
        bounds.append({'stage': s, 'bound': float(running), 'estimate': running_estimate,
                       'epsilon': float(plan.schedule[s - 1]), 'meets': running <= plan.schedule[s - 1]})

    if mode == 'strict' and not density.meets_target:
        raise InfeasibleError(f"assembled bound {float(density.bound):.4f} exceeds ε = {float(plan.epsilon)}",
                              predicted.to_dict())
    cover = CoverSet(plan, phi, mode, density, predicted, bounds, {
        'coordinates': len(modulus),
        'log2_q': modulus.log2_q,
        'stage_ends': list(stage_ends),
        'base_primes': list(base),
        'seed': seed,
    })
    logger.info(f"assembled {len(plan.expressions)} expressions over {len(modulus):,} coordinates "
                f"(log2 Q ≈ {modulus.log2_q:.0f}), density bound {float(density.bound):.4g}")
    return cover
