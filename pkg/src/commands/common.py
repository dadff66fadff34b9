"""
Helpers shared by the command classes: settings overrides, report writing, exit codes.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

from ..core.exceptions import (
    BudgetExceededError, CertificateViolation, ExpressionParseError, InfeasibleError,
    PreconditionError, PrimeError, UnsupportedExpressionError,
)
from ..core.report_store import ReportStore, default_report_path
from ..core.settings import ExitCodes, Settings
from .run_config import RunConfig

logger = logging.getLogger(__name__)


def settings_for(config: RunConfig, settings: Settings) -> Settings:
    """Settings with the run's budget and worker count applied."""
    verification = settings.verification.model_copy(update={'budget': config.budget, 'workers': config.workers})
    return settings.model_copy(update={'verification': verification})


def report_store(config: RunConfig, settings: Settings, name: Optional[str] = None) -> ReportStore:
    path = Path(config.out) if config.out else default_report_path(settings.paths.output_dir, config.command, name)
    store = ReportStore(path, force=config.force)
    store.check_writable()
    return store


def exit_code_for(error: Exception) -> int:
    """ExitCodes value for an exception raised by a command."""
    if isinstance(error, (InfeasibleError, BudgetExceededError)):
        return ExitCodes.INFEASIBLE
    if isinstance(error, CertificateViolation):
        return ExitCodes.CHECK_FAILURE
    if isinstance(error, (ExpressionParseError, UnsupportedExpressionError, PreconditionError, PrimeError,
                          ValueError, FileExistsError)):
        return ExitCodes.USAGE_ERROR
    return ExitCodes.CHECK_FAILURE


def failure_section(error: Exception) -> Dict[str, Any]:
    """Machine-readable description of a failed run."""
    out: Dict[str, Any] = {'type': type(error).__name__, 'message': str(error),
                           'exit_code': exit_code_for(error)}
    for attr in ('offset', 'witness', 'estimate', 'needed', 'budget', 'attempts', 'coordinate'):
        value = getattr(error, attr, None)
        if value not in (None, {}, []):
            out[attr] = value
    return out


def print_banner(title: str) -> None:
    print(f"\n{'='*60}")
    print(title)
    print(f"{'='*60}")


def mark(ok: bool) -> str:
    return '✓' if ok else '✗'
