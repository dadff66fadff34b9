"""
Image enumeration of an expression under constructed maps.

Exhaustive mode iterates only over the dependency footprint: residues the
value never reads are pinned to 0, which leaves the image unchanged.
Sampled mode draws uniform points and can only falsify a certificate.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..construct.certificate import Certificate, decode_values, encode_values
from ..core.exceptions import BudgetExceededError
from ..core.settings import Settings, get_settings
from ..expr.evaluate import evaluate
from ..expr.footprint import dependency_footprint, reduced_domain
from ..expr.model import Expression
from ..expr.parser import format_expression

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass
class ImageReport:
    """Outcome of one exhaustive or sampled run."""

    expression: str
    mode: str
    domain_size: int
    checked: int
    image_size: Optional[int] = None
    violations: int = 0
    claimed_size: Optional[int] = None
    witness: Optional[Dict[str, Any]] = None
    footprint: List[Pair] = field(default_factory=list)
    wall_time: float = 0.0
    codes: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        if self.violations:
            return False
        if self.mode == 'exhaustive' and self.claimed_size is not None:
            return self.image_size <= self.claimed_size
        return True

    def to_dict(self) -> Dict[str, Any]:
        out = {
            'expression': self.expression,
            'mode': self.mode,
            'domain_size': str(self.domain_size),
            'checked': self.checked,
            'image_size': self.image_size,
            'violations': self.violations,
            'claimed_size': None if self.claimed_size is None else str(self.claimed_size),
            'passed': self.passed,
            'wall_time': round(self.wall_time, 4),
        }
        if self.mode == 'exhaustive':
            out['footprint'] = [list(p) for p in self.footprint]
        else:
            out['note'] = 'falsification only: zero violations proves nothing'
        if self.witness:
            out['witness'] = self.witness
        return out


def _points(expr: Expression, n: int, domain: Sequence[Pair], digits: Sequence[np.ndarray],
            size: int) -> Dict[int, np.ndarray]:
    points = {v: np.zeros((size, n), dtype=np.int64) for v in expr.variables}
    for (v, c), d in zip(domain, digits):
        points[v][:, c] = d
    return points


def _witness(points: Dict[int, np.ndarray], values: np.ndarray, row: int) -> Dict[str, Any]:
    return {
        'point': {str(v): pts[row].tolist() for v, pts in sorted(points.items())},
        'value': values[row].tolist(),
    }


def _enumerate_chunk(expr: Expression, maps, domain: Tuple[Pair, ...], radices: Tuple[int, ...],
                     start: int, stop: int, certificate: Optional[Certificate]
                     ) -> Tuple[np.ndarray, int, Optional[Dict[str, Any]]]:
    """Distinct value codes, violation count and first witness on [start, stop) of the domain."""
    size = stop - start
    n = len(maps.modulus)
    if domain:
        digits = np.unravel_index(np.arange(start, stop, dtype=np.int64), radices)
    else:
        digits = ()
    points = _points(expr, n, domain, digits, size)
    values = evaluate(expr, maps, points)
    codes = np.unique(encode_values(values, maps.modulus.values))
    violations, witness = 0, None
    if certificate is not None:
        bad = np.nonzero(~certificate.contains(values))[0]
        violations = int(bad.size)
        if violations:
            witness = _witness(points, values, int(bad[0]))
    return codes, violations, witness


def _domain_chunks(size: int, chunk_size: int) -> List[Tuple[int, int]]:
    return [(s, min(s + chunk_size, size)) for s in range(0, size, chunk_size)]


def image_exhaustive(expr: Expression, maps, certificate: Optional[Certificate] = None,
                     budget: Optional[int] = None, chunk_size: Optional[int] = None,
                     workers: Optional[int] = None, reduce: bool = True,
                     keep_codes: bool = False, settings: Settings = None) -> ImageReport:
    """
    Exact image of an expression over its footprint domain.

    Args:
        expr: Expression over the variables of `maps`
        maps: MapSet the expression is evaluated under
        certificate: Checked against every attained value when given
        budget: Maximum number of domain points
        chunk_size: Points evaluated per batch
        workers: Processes; 1 runs in-process
        reduce: Iterate over the footprint only (False enumerates every residue)
        keep_codes: Keep the sorted image codes on the report
        settings: Application settings

    Returns:
        ImageReport with the exact image size

    Raises:
        BudgetExceededError: If the domain exceeds the budget
    """
    settings = settings or get_settings()
    cfg = settings.verification
    budget = budget or cfg.budget
    chunk_size = chunk_size or cfg.chunk_size
    workers = workers or cfg.workers
    started = time.perf_counter()

    primes = maps.modulus.values
    if reduce:
        domain = reduced_domain(dependency_footprint(expr, maps))
    else:
        domain = tuple((v, c) for v in expr.variables for c in range(len(primes)))
    radices = tuple(int(primes[c]) for _, c in domain)
    size = math.prod(radices)
    if size > budget:
        raise BudgetExceededError(size, budget)
    q = math.prod(primes)

    chunks = _domain_chunks(size, chunk_size)
    results: List[Tuple[np.ndarray, int, Optional[Dict[str, Any]]]] = [None] * len(chunks)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futures = {ex.submit(_enumerate_chunk, expr, maps, domain, radices, s, e, certificate): k
                       for k, (s, e) in enumerate(chunks)}
            for f in as_completed(futures):
                results[futures[f]] = f.result()
    else:
        for k, (s, e) in enumerate(chunks):
            results[k] = _enumerate_chunk(expr, maps, domain, radices, s, e, certificate)

    # merged in chunk order so parallel and sequential runs agree
    if q <= cfg.bitset_limit:
        seen = np.zeros(q, dtype=bool)
        for codes, _, _ in results:
            seen[codes] = True
        image = np.flatnonzero(seen)
    else:
        image = np.unique(np.concatenate([codes for codes, _, _ in results]))
    violations = sum(v for _, v, _ in results)
    witness = next((w for _, _, w in results if w is not None), None)

    report = ImageReport(
        expression=format_expression(expr),
        mode='exhaustive',
        domain_size=size,
        checked=size,
        image_size=int(image.size),
        violations=violations,
        claimed_size=None if certificate is None else certificate.claimed_size,
        witness=witness,
        footprint=list(domain),
        wall_time=time.perf_counter() - started,
        codes=image if keep_codes else None,
    )
    if violations:
        logger.error(f"{report.expression}: {violations} values outside the certificate, e.g. {witness}")
    logger.info(f"{report.expression}: image {report.image_size} of {q} over {size:,} footprint points")
    return report


def image_sampled(expr: Expression, maps, certificate: Certificate, samples: Optional[int] = None,
                  rng: Optional[np.random.Generator] = None, chunk_size: Optional[int] = None,
                  settings: Settings = None) -> ImageReport:
    """
    Check `samples` uniform domain points against a certificate.

    Args:
        expr: Expression over the variables of `maps`
        maps: MapSet the expression is evaluated under
        certificate: Membership test applied to every sampled value
        samples: Number of points
        rng: Generator (seeded from settings when omitted)
        chunk_size: Points evaluated per batch
        settings: Application settings

    Returns:
        ImageReport in sampled mode; the first violation carries a witness
    """
    settings = settings or get_settings()
    samples = samples or settings.verification.samples
    chunk_size = chunk_size or settings.verification.chunk_size
    rng = rng if rng is not None else np.random.default_rng(settings.random.seed)
    started = time.perf_counter()

    modulus = maps.modulus
    violations, witness = 0, None
    done = 0
    while done < samples:
        count = min(chunk_size, samples - done)
        points = {v: modulus.random_elements(rng, count) for v in expr.variables}
        values = evaluate(expr, maps, points)
        bad = np.nonzero(~certificate.contains(values))[0]
        if bad.size and witness is None:
            witness = _witness(points, values, int(bad[0]))
        violations += int(bad.size)
        done += count

    report = ImageReport(
        expression=format_expression(expr),
        mode='sampled',
        domain_size=modulus.q ** max(1, len(expr.variables)),
        checked=samples,
        violations=violations,
        claimed_size=certificate.claimed_size,
        witness=witness,
        wall_time=time.perf_counter() - started,
    )
    if violations:
        logger.error(f"{report.expression}: {violations} of {samples} samples violate the certificate")
    else:
        logger.info(f"{report.expression}: {samples} samples, no violations")
    return report


def image_values(expr: Expression, maps, budget: Optional[int] = None, reduce: bool = True,
                 settings: Settings = None) -> np.ndarray:
    """Attained values as an (m, n) residue matrix in code order."""
    report = image_exhaustive(expr, maps, budget=budget, reduce=reduce, keep_codes=True, settings=settings)
    return decode_values(report.codes, maps.modulus.values)
