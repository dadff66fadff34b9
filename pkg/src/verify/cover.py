"""Checks that A − A covers the whole ring, for explicit and functional sets."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Protocol

import numpy as np

from ..core.settings import Settings, get_settings
from .sumset import ResidueSet, difference_set

logger = logging.getLogger(__name__)


class FunctionalCover(Protocol):
    """A = {φ(x)} ∪ {φ(x) + x}, known only through its generator."""

    modulus: Any

    def element(self, x: np.ndarray, shifted: bool) -> np.ndarray:
        """φ(x), or φ(x) + x when shifted, for an (N, n) residue matrix."""

    def difference_witness(self, x: np.ndarray) -> np.ndarray:
        """y with y ∈ A and y + x ∈ A."""


@dataclass
class CoverReport:
    mode: str
    checked: int
    failures: int
    witness: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        out = {'mode': self.mode, 'checked': self.checked, 'failures': self.failures, 'passed': self.passed}
        if self.witness:
            out['witness'] = self.witness
        return out


def verify_cover_explicit(a: ResidueSet, settings: Settings = None) -> CoverReport:
    """A − A = Z_q by bitset difference set."""
    diff = difference_set(a, settings)
    missing = [x for x in range(a.q) if x not in diff]
    report = CoverReport('explicit', a.q, len(missing), {'missing': missing[:16]} if missing else None)
    logger.info(f"|A − A| = {len(diff)} of {a.q}")
    return report


def _all_elements(modulus) -> np.ndarray:
    z = np.arange(modulus.q, dtype=np.int64)
    return np.stack([z % p for p in modulus.values], axis=1)


def verify_cover_functional(cover: FunctionalCover, rng: Optional[np.random.Generator] = None,
                            samples: int = 1000, settings: Settings = None) -> CoverReport:
    """
    Witness sweep: y = witness(x) must be a generated element and so must y + x.

    Exhaustive over Z_Q when Q is known and ≤ exhaustive_witness_limit, otherwise `samples`
    uniform x.
    """
    settings = settings or get_settings()
    modulus = cover.modulus
    primes = np.asarray(modulus.values, dtype=np.int64)
    batch = max(1, settings.verification.chunk_size // len(primes))
    q = getattr(modulus, 'q', None)
    if q is not None and q <= settings.verification.exhaustive_witness_limit:
        everything = _all_elements(modulus)
        mode, total = 'exhaustive', everything.shape[0]
        batches = (everything[s:s + batch] for s in range(0, total, batch))
    else:
        rng = rng if rng is not None else np.random.default_rng(settings.random.seed)
        mode, total = 'sampled', samples
        batches = (modulus.random_elements(rng, min(batch, total - s)) for s in range(0, total, batch))

    failures, witness = 0, None
    for xs in batches:
        y = cover.difference_witness(xs)
        ok = np.all(y == cover.element(xs, False), axis=1)
        ok &= np.all(np.mod(y + xs, primes) == cover.element(xs, True), axis=1)
        bad = np.flatnonzero(~ok)
        if bad.size and witness is None:
            k = int(bad[0])
            witness = {'x': xs[k].tolist()[:64], 'y': y[k].tolist()[:64]}
            logger.error(f"difference witness fails at x = {witness['x'][:8]}...")
        failures += int(bad.size)
    logger.info(f"{mode} witness sweep over {total} elements: {failures} failures")
    return CoverReport(mode, int(total), failures, witness)


def verify_cover(a, settings: Settings = None, **kwargs) -> CoverReport:
    if isinstance(a, ResidueSet):
        return verify_cover_explicit(a, settings)
    return verify_cover_functional(a, settings=settings, **kwargs)
