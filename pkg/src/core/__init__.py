"""Core components and configuration"""
from .settings import get_settings, Settings, ExitCodes
from .exceptions import (
    ConstructionError, PrimeError, ModulusMismatchError, NonInvertibleError,
    PreconditionError, UnsupportedExpressionError, ExpressionParseError,
    RetriesExhaustedError, BudgetExceededError, InfeasibleError, CertificateViolation,
)

__all__ = [
    'get_settings',
    'Settings',
    'ExitCodes',
    'ConstructionError',
    'PrimeError',
    'ModulusMismatchError',
    'NonInvertibleError',
    'PreconditionError',
    'UnsupportedExpressionError',
    'ExpressionParseError',
    'RetriesExhaustedError',
    'BudgetExceededError',
    'InfeasibleError',
    'CertificateViolation',
]
