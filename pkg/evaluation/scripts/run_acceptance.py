#!/usr/bin/env python3
"""
Acceptance runner: desk-scale checks of every construction, the assembler
and the verifier, written to one JSON results file.

Run from the repository root:

    python -m evaluation.scripts.run_acceptance
    python -m evaluation.scripts.run_acceptance --only affine basic_ident --quick
"""

import argparse
import logging
import math
import time
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from src.assemble import assemble, estimate, plan, sample_sum_elements
from src.construct.handler_factory import construct_expression
from src.construct.small_values import small_value_bound, small_value_search
from src.core.exceptions import ConstructionError
from src.core.report_store import ReportStore
from src.core.settings import Settings, get_settings
from src.expr import classify, parse_expression
from src.randomized import RetryPolicy, RngSpec, final_pq, prob_two_var
from src.randomized.final_pq import designated_values
from src.randomized.two_var import expression_values
from src.residue import primes_between
from src.residue.maps import mod_between_array
from src.residue.primes import primes_in_window
from src.verify import (
    ResidueSet, image_exhaustive, image_sampled, l_sq_plus_k, min_image_experiment,
    verify_cover_functional,
)

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

LOOP_EXPR = "a(x)*a(x) + a(x)*b(y) + (a(x)+x)*(b(y)+y)"
FINAL_PQ_EXPR = "a(x)*b(y) + (a(x)+x)*(b(y)+y) + a(x)*c(z)"
FIVE_PRIME_EXPR = "a(x)*(b(y)+y) + b(y)*(c(z)+z) + c(z)*a(x)"

# Expressions whose full domain is small enough to enumerate next to the footprint
ORACLE_CASES = [
    ("a(x)*b(y) + a(x) + x + b(y) + y", [5, 7]),
    ("a(x)*b(y) + (a(x)+x)*(b(y)+y) + 2*x", [11]),
    ("a(x)*a(x) + a(x) + x", [11, 13]),
    ("a(x)*a(x) + b(y)*b(y)", [11, 13]),
    ("a(x)*b(y) + (a(x)+x)*(b(y)+y) + a(x)*c(z) + c(z) + z", [7, 11]),
    ("(a(x)+x)*b(y) + (b(y)+y)*c(z) + (c(z)+z)*a(x)", [31]),
]


def _coeff(c: int, body: str) -> str:
    """Signed '+ c*body' piece; empty when c = 0."""
    if c == 0:
        return ''
    sign = '+' if c > 0 else '-'
    magnitude = abs(c)
    return f" {sign} {body if magnitude == 1 else f'{magnitude}*{body}'}"


def _shifted(m: str, v: str, c: int) -> str:
    if c == 0:
        return f"{m}({v})"
    sign = '+' if c > 0 else '-'
    scale = '' if abs(c) == 1 else f"{abs(c)}*"
    return f"({m}({v}){sign}{scale}{v})"


def _linear(rng: np.random.Generator, names, lo: int = 0, hi: int = 20) -> str:
    out = ''
    for m, v in names:
        out += _coeff(int(rng.integers(lo, hi)), f"{m}({v})")
        out += _coeff(int(rng.integers(lo, hi)), v)
    return out


class AcceptanceRunner:
    """Runs named acceptance checks and collects their results"""

    def __init__(self, settings: Settings = None, seed: int = 0, quick: bool = False):
        """
        Initialize runner

        Args:
            settings: Application settings (uses global if not provided)
            seed: Seed for every random draw of the run
            quick: Fewer trials and samples, for a smoke run
        """
        self.settings = settings or get_settings()
        self.seed = seed
        self.quick = quick
        self.checks: Dict[str, Callable[[], Dict[str, Any]]] = {
            'carry_identities': self.check_carry_identities,
            'single_var': self.check_single_var,
            'affine': self.check_affine,
            'basic_ident': self.check_basic_ident,
            'small_values': self.check_small_values,
            'prob_two_var': self.check_prob_two_var,
            'final_pq': self.check_final_pq,
            'five_prime': self.check_five_prime,
            'assembler': self.check_assembler,
            'oracles': self.check_oracles,
            'min_image': self.check_min_image,
        }

    def _trials(self, full: int, quick: int) -> int:
        return quick if self.quick else full

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, sum(map(ord, name))])

    def check_carry_identities(self) -> Dict[str, Any]:
        """Lift, projection and cross-modulus carry identities for all primes ≤ 47."""
        primes = [int(p) for p in primes_between(2, 48)]
        failures: List[str] = []
        for p in primes:
            z = np.arange(-2 * p * p, 2 * p * p + 1, dtype=np.int64)
            lifted = np.mod(z, p)
            if np.any((lifted - z) % p) or np.any(lifted[z >= 0] > z[z >= 0]):
                failures.append(f"projection p={p}")
            x, y = np.meshgrid(np.arange(p), np.arange(p), indexing='ij')
            carry = x + y - (x + y) % p
            if not np.isin(carry, (0, p)).all():
                failures.append(f"lift sum p={p}")

        for p in primes:
            x, y = np.meshgrid(np.arange(p), np.arange(p), indexing='ij')
            for r in primes:
                carry = np.mod(mod_between_array(x, p, r) + mod_between_array(y, p, r)
                               - mod_between_array((x + y) % p, p, r), r)
                if not np.isin(carry, (0, p % r)).all():
                    failures.append(f"cross carry ({p}, {r})")

        triples = 0
        for p3 in primes:
            x = np.arange(p3, dtype=np.int64)
            for p2 in primes:
                t = math.ceil(p3 / p2)
                for p1 in primes:
                    triples += 1
                    diff = np.mod(mod_between_array(mod_between_array(x, p3, p2), p2, p1)
                                  - mod_between_array(x, p3, p1), p1)
                    allowed = np.mod(-np.arange(t + 1) * p2, p1)
                    if not np.isin(diff, allowed).all():
                        failures.append(f"double reduction ({p1}, {p2}, {p3})")
        return {'passed': not failures, 'primes': len(primes), 'triples': triples, 'failures': failures[:20]}

    def check_single_var(self) -> Dict[str, Any]:
        """α(x)² + α(x) + x over four primes from (100, 200): image ≤ (3/4)⁴·q."""
        primes = primes_in_window(100, 200)[:4]
        built = construct_expression(parse_expression("a(x)*a(x) + a(x) + x"), primes,
                                     seed=self.seed, settings=self.settings)
        q = built.modulus.q
        # coordinates are independent, so the image is the product of per-coordinate images
        image = math.prod(built.measurements['measured_per_coordinate'])
        bound = Fraction(3, 4) ** 4 * q
        return {
            'passed': image <= bound and image <= built.certificate.claimed_size,
            'primes': primes, 'image_size': image, 'claimed_size': built.certificate.claimed_size,
            'bound': float(bound), 'q': q,
        }

    def check_affine(self) -> Dict[str, Any]:
        """Affine blocks and closed-form triangles are exactly constant over Z_101."""
        rng = self.rng('affine')
        trials = self._trials(100, 5)
        failures, tags = [], set()
        for _ in range(trials):
            nu1, nu2 = (int(v) for v in rng.integers(1, 20, size=2))
            text = ("a(x)*b(y) + " + f"{_shifted('a', 'x', nu1)}*{_shifted('b', 'y', nu2)}"
                    + _linear(rng, (('a', 'x'), ('b', 'y'))))
            failures += self._constant_image(text, [101], tags)

            c = [int(v) for v in rng.integers(-3, 4, size=6)]
            while c[0] == c[5] or c[1] == c[2] or c[3] == c[4]:
                c = [int(v) for v in rng.integers(-3, 4, size=6)]
            text = (f"{_shifted('a', 'x', c[0])}*{_shifted('b', 'y', c[1])}"
                    f" + {_shifted('b', 'y', c[2])}*{_shifted('c', 'z', c[3])}"
                    f" + {_shifted('c', 'z', c[4])}*{_shifted('a', 'x', c[5])}"
                    + _linear(rng, (('a', 'x'), ('b', 'y'), ('c', 'z'))))
            failures += self._constant_image(text, [101], tags)
        return {'passed': not failures, 'trials': 2 * trials, 'tags': sorted(tags), 'failures': failures[:10]}

    def _constant_image(self, text: str, primes: List[int], tags: set) -> List[Dict[str, Any]]:
        expr = parse_expression(text)
        built = construct_expression(expr, primes, seed=self.seed, settings=self.settings)
        tags.add(built.tag)
        report = image_exhaustive(expr, built.maps, built.certificate, settings=self.settings)
        if report.image_size == 1 and report.passed:
            return []
        return [{'expression': text, 'tag': built.tag, 'image_size': report.image_size}]

    def check_basic_ident(self) -> Dict[str, Any]:
        """λ₀αβ + linear part over (101, 103): image ≤ K·q."""
        rng = self.rng('basic_ident')
        k = self.settings.construction.basic_ident_k
        trials = self._trials(20, 2)
        worst, failures = 0, []
        for _ in range(trials):
            lam0, lam1, mu1, lam2, mu2 = (int(v) for v in rng.integers(1, 50, size=5))
            text = (f"{lam0}*a(x)*b(y) + {lam1}*a(x) + {mu1}*x + {lam2}*b(y) + {mu2}*y")
            expr = parse_expression(text)
            built = construct_expression(expr, [101, 103], seed=self.seed, settings=self.settings)
            report = image_exhaustive(expr, built.maps, built.certificate, settings=self.settings)
            worst = max(worst, report.image_size)
            if not report.passed or report.image_size > k * 103:
                failures.append({'expression': text, 'image_size': report.image_size})
        return {'passed': not failures, 'trials': trials, 'max_image': worst, 'bound': k * 103,
                'failures': failures}

    def check_small_values(self) -> Dict[str, Any]:
        """Random degree-2 polynomials over Z_499 reach a centered value ≤ C·p^(3/4)."""
        rng = self.rng('small_values')
        p = 499
        bound = small_value_bound(2, p, self.settings.construction.small_value_c)
        trials = self._trials(1000, 50)
        worst = 0
        failures = 0
        for _ in range(trials):
            coeffs = rng.integers(0, p, size=3)
            coeffs[2] = rng.integers(1, p)
            _, achieved = small_value_search(coeffs.tolist(), p)
            worst = max(worst, abs(achieved))
            failures += abs(achieved) > bound
        return {'passed': failures == 0, 'trials': trials, 'max_achieved': worst, 'bound': bound,
                'failures': int(failures)}

    def check_prob_two_var(self) -> Dict[str, Any]:
        """Seed sweep at p = 23: the expression avoids 0 on all 529 points."""
        params = classify(parse_expression(LOOP_EXPR)).params
        p = 23
        seeds = self._trials(100, 10)
        retries, failures = [], []
        for seed in range(seeds):
            found = prob_two_var(params, p, RngSpec(seed), RetryPolicy(self.settings.random.max_retries))
            retries.append(found.retries)
            if not (expression_values(params, found.alpha, found.beta, p) != 0).all():
                failures.append(seed)
        mean = float(np.mean(retries))
        return {'passed': not failures and mean < 4, 'seeds': seeds, 'mean_retries': mean,
                'max_retries': int(max(retries)), 'failing_seeds': failures}

    def check_final_pq(self) -> Dict[str, Any]:
        """(q, p) = (31, 37): the p − q designated values are never attained."""
        result = classify(parse_expression(FINAL_PQ_EXPR))
        p, q = 37, 31
        modulus, _, certificate, measurements = final_pq(
            result.normalized, result.params, p, q, RngSpec(self.seed),
            RetryPolicy(self.settings.random.max_retries), settings=self.settings)
        image = measurements['image_size']
        return {
            'passed': measurements['verified'] == 'exhaustive' and image <= p * q - (p - q),
            'image_size': image, 'claimed_size': certificate.claimed_size,
            'designated': designated_values(p, q).shape[0],
        }

    def check_five_prime(self) -> Dict[str, Any]:
        """Five-prime triangle over (17, 19, 23, 29, 31): sampled certificate check and approximation bound."""
        expr = parse_expression(FIVE_PRIME_EXPR)
        built = construct_expression(expr, [17, 19, 23, 29, 31], seed=self.seed, settings=self.settings)
        samples = self._trials(10**6, 10**4)
        report = image_sampled(expr, built.maps, built.certificate, samples=samples,
                               rng=self.rng('five_prime'), settings=self.settings)
        m = built.measurements
        return {
            'passed': report.passed and bool(m.get('approximation_holds')),
            'samples': samples, 'violations': report.violations,
            'glue_set_size': m.get('glue_set_size'), 'max_t_minus_uv': m.get('max_t_minus_uv'),
            'bound_t_minus_uv': m.get('bound_t_minus_uv'),
        }

    def check_assembler(self) -> Dict[str, Any]:
        """(l, k) = (0, 2) built strict to ε end to end, and strict quadratic assembly reported infeasible."""
        epsilon = self.settings.assembly.epsilon
        samples = self._trials(1000, 100)
        cover = assemble(plan(0, 2, epsilon), mode='strict', base_primes=(5, 7, 11), seed=self.seed,
                         settings=self.settings, schedule='fitted')
        rng = self.rng('assembler')
        witnesses = verify_cover_functional(cover, rng, samples=samples, settings=self.settings)
        sums = sample_sum_elements(cover, 0, 2, rng, samples)

        strict = estimate(plan(1, 0, epsilon), mode='strict', settings=self.settings)
        failure = strict.first_failure()
        return {
            'passed': witnesses.passed and sums.passed and cover.density.meets_target and failure is not None,
            'mode': cover.mode,
            'schedule': [str(e) for e in cover.plan.schedule],
            'coordinates': len(cover.modulus),
            'witness_failures': witnesses.failures,
            'sum_failures': sums.failures,
            'density_bound': cover.density.to_dict(),
            'strict_quadratic': {'feasible': strict.feasible,
                                 'failing_stage': None if failure is None else failure.stage,
                                 'estimate': strict.to_dict()},
        }

    def check_oracles(self) -> Dict[str, Any]:
        """Sumset engine against naive loops; footprint against full-domain enumeration."""
        rng = self.rng('oracles')
        trials = self._trials(1000, 50)
        sumset_failures = 0
        for _ in range(trials):
            q = int(rng.integers(2, 1001))
            elements = rng.choice(q, size=int(rng.integers(1, min(q, 50) + 1)), replace=False)
            l, k = (int(v) for v in rng.integers(0, 3, size=2))
            products = np.unique(np.mod(np.multiply.outer(elements, elements), q))
            expected = np.array([0])
            for summands in [products] * l + [elements] * k:
                expected = np.unique(np.mod(np.add.outer(expected, summands), q))
            got = l_sq_plus_k(ResidueSet.of(q, elements.tolist()), l, k, self.settings)
            sumset_failures += sorted(got) != expected.tolist()

        footprint_failures = []
        for text, primes in ORACLE_CASES:
            expr = parse_expression(text)
            built = construct_expression(expr, primes, seed=self.seed, settings=self.settings)
            reduced = image_exhaustive(expr, built.maps, built.certificate, keep_codes=True, settings=self.settings)
            full = image_exhaustive(expr, built.maps, built.certificate, reduce=False, keep_codes=True,
                                    settings=self.settings)
            if not np.array_equal(reduced.codes, full.codes):
                footprint_failures.append(text)
        return {'passed': sumset_failures == 0 and not footprint_failures, 'sumset_trials': trials,
                'sumset_failures': int(sumset_failures), 'footprint_cases': len(ORACLE_CASES),
                'footprint_failures': footprint_failures}

    def check_min_image(self) -> Dict[str, Any]:
        """α(x)β(y) + x + y on Z_2 × Z_3 attains at least min(p, q) values."""
        result = min_image_experiment(2, 3)
        return {'passed': result.minimum >= 2, **result.to_dict()}

    def run(self, only: Optional[List[str]] = None) -> Dict[str, Any]:
        """
        Run the selected checks (all by default)

        Returns:
            Results dictionary with one entry per check and an overall verdict
        """
        names = only or list(self.checks)
        unknown = [n for n in names if n not in self.checks]
        if unknown:
            raise ValueError(f"unknown checks: {unknown}")

        results: Dict[str, Any] = {}
        for name in names:
            started = time.perf_counter()
            logger.info(f"running {name}")
            try:
                outcome = self.checks[name]()
            except ConstructionError as e:
                logger.error(f"{name} failed: {e}")
                outcome = {'passed': False, 'error': type(e).__name__, 'message': str(e)}
            outcome['wall_time'] = round(time.perf_counter() - started, 3)
            results[name] = outcome
            logger.info(f"{'✓' if outcome['passed'] else '✗'} {name} ({outcome['wall_time']}s)")

        return {
            'seed': self.seed,
            'quick': self.quick,
            'checks': results,
            'passed': all(r['passed'] for r in results.values()),
        }

    def print_summary(self, results: Dict[str, Any]):
        print(f"\n{'='*60}")
        print("ACCEPTANCE")
        print(f"{'='*60}")
        for name, outcome in results['checks'].items():
            print(f"{'✓' if outcome['passed'] else '✗'} {name:<18} {outcome['wall_time']:>8.2f}s")
        print(f"\n{'PASS' if results['passed'] else 'FAIL'}")


def main():
    parser = argparse.ArgumentParser(description='Run the acceptance checks')
    parser.add_argument('--only', nargs='+', help='Checks to run (default: all)')
    parser.add_argument('--seed', type=int, default=0, help='Seed for every random draw (default: 0)')
    parser.add_argument('--quick', action='store_true', help='Fewer trials and samples')
    parser.add_argument('--output', help='Results file (default: results/acceptance_<timestamp>.json)')
    args = parser.parse_args()

    runner = AcceptanceRunner(seed=args.seed, quick=args.quick)
    try:
        results = runner.run(args.only)
    except ValueError as e:
        logger.error(str(e))
        return 3

    if args.output:
        output_path = Path(args.output)
    else:
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        output_path = runner.settings.paths.output_dir / f"acceptance_{timestamp}.json"
    ReportStore(output_path, force=True).write(results)
    logger.info(f"Results saved to {output_path}")

    runner.print_summary(results)
    return 0 if results['passed'] else 1


if __name__ == "__main__":
    import sys
    sys.exit(main())
