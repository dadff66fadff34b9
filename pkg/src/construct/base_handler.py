"""
Base handler class shared by every case constructor.
"""

import importlib
import logging
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, Optional, Sequence, Tuple

from ..core.exceptions import PreconditionError, PrimeError
from ..core.settings import Settings, get_settings
from ..expr.classify import Classification
from ..expr.model import Expression
from ..residue import Modulus
from .certificate import Certificate
from .result import Construction
from .varmap import MapSet

logger = logging.getLogger(__name__)

Built = Tuple[Modulus, MapSet, Certificate, Dict[str, Any]]


class BaseHandler(ABC):
    """Builds maps and a certificate for one case tag."""

    # Cache for config modules
    _config_cache: ClassVar[Dict[str, Any]] = {}

    def __init__(self, settings: Settings = None):
        """
        Args:
            settings: Application settings (uses global if not provided)
        """
        self.settings = settings or get_settings()

    def _get_config(self):
        """
        Get the config module for this handler

        Returns:
            The config module next to the handler module
        """
        module_path = self.__class__.__module__
        parts = module_path.rsplit('.', 1)
        config_path = f"{parts[0]}.config" if len(parts) == 2 else module_path + '.config'

        if config_path not in BaseHandler._config_cache:
            BaseHandler._config_cache[config_path] = importlib.import_module(config_path)

        return BaseHandler._config_cache[config_path]

    @property
    def case_tag(self) -> str:
        return self._get_config().CASE_TAG

    @property
    def description(self) -> str:
        return self._get_config().DESCRIPTION

    def resolve_primes(self, primes: Optional[Sequence[int]]) -> Tuple[int, ...]:
        """Given primes, or the handler's defaults; at least MIN_PRIMES of them."""
        config = self._get_config()
        chosen = tuple(int(p) for p in (primes or config.DEFAULT_PRIMES or self.settings.construction.default_prime_list))
        if len(chosen) < config.MIN_PRIMES:
            raise PrimeError(f"{self.case_tag} needs at least {config.MIN_PRIMES} primes, got {len(chosen)}")
        return chosen

    def construct(self, classification: Classification, primes: Optional[Sequence[int]] = None,
                  seed: Optional[int] = None) -> Construction:
        """
        Build for the normalized expression of a classification.

        Args:
            classification: Output of classify()
            primes: Primes to build over; handler defaults when omitted
            seed: Seed for randomized handlers (settings seed when omitted)

        Returns:
            Construction for the normalized expression
        """
        if classification.tag.value != self.case_tag:
            raise PreconditionError(f"{self.__class__.__name__} handles {self.case_tag}, got {classification.tag.value}")
        chosen = self.resolve_primes(primes)
        logger.info(f"{self.case_tag}: building over {list(chosen)}")
        modulus, maps, certificate, measurements = self.build(
            classification.normalized, classification.params, chosen, seed)
        return Construction(
            tag=self.case_tag,
            expression=classification.normalized,
            modulus=modulus,
            maps=maps,
            certificate=certificate,
            params=dict(classification.params),
            measurements=measurements,
        )

    def construct_for(self, expr: Expression, classification: Classification,
                      primes: Optional[Sequence[int]] = None, seed: Optional[int] = None) -> Construction:
        """Build and pull the maps back to the caller's expression."""
        built = self.construct(classification, primes, seed)
        return built.pulled_back(expr, classification.transform)

    @abstractmethod
    def build(self, expr: Expression, params: Dict[str, Any], primes: Tuple[int, ...],
              seed: Optional[int]) -> Built:
        """Case-specific construction."""
