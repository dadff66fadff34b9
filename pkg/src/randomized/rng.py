"""
Seeded generators and the Las Vegas retry loop.

Attempt r of a construction draws from PCG64(seed + r), so a run is fully
determined by (seed, inputs) and a failed attempt never shifts the stream
of the next one.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar

import numpy as np

from ..core.exceptions import RetriesExhaustedError
from ..core.settings import Settings, get_settings

logger = logging.getLogger(__name__)

T = TypeVar('T')


@dataclass(frozen=True)
class RngSpec:
    seed: int
    algorithm: str = 'PCG64'

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"seed {self.seed} does not fit in 64 bits")
        if self.algorithm != 'PCG64':
            raise ValueError(f"unsupported generator {self.algorithm}")

    def generator(self, retry: int = 0) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64((int(self.seed) + retry) % 2 ** 64))

    def to_dict(self) -> Dict[str, Any]:
        return {'seed': int(self.seed), 'algorithm': self.algorithm}


@dataclass(frozen=True)
class RetryPolicy:
    max_retries: int = 64

    def __post_init__(self):
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")

    def to_dict(self) -> Dict[str, Any]:
        return {'max_retries': self.max_retries, 'reseed': 'seed + retry'}


def from_settings(seed: Optional[int] = None, settings: Settings = None) -> Tuple[RngSpec, RetryPolicy]:
    settings = settings or get_settings()
    spec = RngSpec(settings.random.seed if seed is None else int(seed), settings.random.algorithm)
    return spec, RetryPolicy(settings.random.max_retries)


def las_vegas(attempt: Callable[[np.random.Generator], Tuple[Optional[T], Optional[Dict[str, Any]]]],
              rng: RngSpec, policy: RetryPolicy, label: str) -> Tuple[T, int]:
    """
    Run attempts until one succeeds.

    Args:
        attempt: Returns (result, None) on success or (None, witness) on failure
        rng: Seed specification
        policy: Retry budget
        label: Name used in logs and errors

    Returns:
        (result, number of failed attempts before it)

    Raises:
        RetriesExhaustedError: If every attempt fails
    """
    witnesses: List[Dict[str, Any]] = []
    for retry in range(policy.max_retries):
        result, witness = attempt(rng.generator(retry))
        if witness is None:
            if retry:
                logger.info(f"{label}: succeeded after {retry} retries")
            return result, retry
        witnesses.append({'retry': retry, **witness})
        logger.warning(f"{label}: attempt {retry} failed at {witness}")
    raise RetriesExhaustedError(label, policy.max_retries, witnesses[-8:])
