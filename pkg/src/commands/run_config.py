"""
Validated run configuration shared by every command.

The whole config is serialized into each report, so a report names
everything needed to reproduce it.
"""

from pathlib import Path
from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.settings import Settings, get_settings
from ..residue.primes import primes_in_window

Command = Literal['classify', 'construct', 'verify', 'assemble', 'estimate', 'experiment']


def parse_int_list(text: Optional[str]) -> Optional[List[int]]:
    """'7,11,13' → [7, 11, 13]."""
    if text is None:
        return None
    return [int(v) for v in text.replace(' ', '').split(',') if v]


def parse_window(text: Optional[str]) -> Optional[Tuple[int, int]]:
    """'100:200' → (100, 200)."""
    if text is None:
        return None
    lo, _, hi = text.partition(':')
    return int(lo), int(hi)


class RunConfig(BaseModel):
    """Everything one command run depends on."""

    command: Command
    expr: Optional[str] = None
    l: Optional[int] = None
    k: Optional[int] = None
    epsilon: Optional[float] = None
    primes: Optional[List[int]] = None
    prime_window: Optional[Tuple[int, int]] = None
    base_primes: Optional[List[int]] = None
    set_values: Optional[List[int]] = None
    q: Optional[int] = None
    p: Optional[int] = None
    seed: int = 0
    mode: Literal['auto', 'exhaustive', 'sampled'] = 'auto'
    assembly_mode: Literal['strict', 'relaxed'] = 'relaxed'
    schedule: Literal['linear', 'fitted'] = 'linear'
    samples: Optional[int] = None
    budget: int = Field(10**8)
    workers: int = 1
    out: Optional[Path] = None
    force: bool = False

    @field_validator('epsilon')
    @classmethod
    def validate_epsilon(cls, v):
        if v is not None and not 0 < v < 1:
            raise ValueError('epsilon must lie in (0, 1)')
        return v

    @field_validator('seed')
    @classmethod
    def validate_seed(cls, v):
        if not 0 <= v < 2**64:
            raise ValueError('seed must fit in 64 bits')
        return v

    @field_validator('samples', 'budget', 'workers')
    @classmethod
    def validate_positive(cls, v):
        if v is not None and v < 1:
            raise ValueError('counts and budgets must be positive')
        return v

    @field_validator('l', 'k')
    @classmethod
    def validate_counts(cls, v):
        if v is not None and v < 0:
            raise ValueError('l and k must be non-negative')
        return v

    @model_validator(mode='after')
    def validate_command(self):
        """Each command's required inputs."""
        if self.prime_window is not None:
            lo, hi = self.prime_window
            if not 2 <= lo < hi:
                raise ValueError(f'prime window {lo}:{hi} must satisfy 2 ≤ lo < hi')
            if self.primes:
                raise ValueError('give either --primes or --prime-window, not both')
        if self.command in ('classify', 'construct') and not self.expr:
            raise ValueError(f'{self.command} needs --expr')
        if self.command == 'verify' and not (self.expr or self.set_values is not None):
            raise ValueError('verify needs --expr or --set')
        if self.set_values is not None and self.q is None:
            raise ValueError('--set needs --q')
        if self.command in ('assemble', 'estimate') and (self.l is None or self.k is None):
            raise ValueError(f'{self.command} needs --l and --k')
        if self.command == 'experiment' and (self.p is None or self.q is None):
            raise ValueError('experiment needs --p and --q')
        return self

    @classmethod
    def from_args(cls, args: Any, settings: Settings = None) -> 'RunConfig':
        """Build from parsed CLI arguments, filling gaps from settings."""
        settings = settings or get_settings()

        def get(name, default=None):
            return getattr(args, name, default)

        return cls(
            command=args.mode,
            expr=get('expr'),
            l=get('l'),
            k=get('k'),
            epsilon=get('epsilon'),
            primes=parse_int_list(get('primes')),
            prime_window=parse_window(get('prime_window')),
            base_primes=parse_int_list(get('base_primes')),
            set_values=parse_int_list(get('set')),
            q=get('q'),
            p=get('p'),
            seed=settings.random.seed if get('seed') is None else get('seed'),
            mode=get('check', None) or 'auto',
            assembly_mode=get('assembly_mode') or settings.assembly.mode,
            schedule=get('schedule') or settings.assembly.schedule,
            samples=get('samples'),
            budget=get('budget') or settings.verification.budget,
            workers=get('workers') or settings.verification.workers,
            out=get('out'),
            force=get('force', False),
        )

    def resolved_primes(self) -> Optional[List[int]]:
        """--primes, or the primes of --prime-window, or None for handler defaults."""
        if self.primes:
            return list(self.primes)
        if self.prime_window is not None:
            return primes_in_window(*self.prime_window)
        return None

    def to_report(self) -> dict:
        return self.model_dump(mode='json')
