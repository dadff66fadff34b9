"""
Exception hierarchy shared by constructors, verifier and CLI.
Each command maps these onto ExitCodes.
"""

from typing import Any, Dict, List, Optional


class ConstructionError(Exception):
    """Base class for every failure raised by this package."""


class PrimeError(ConstructionError):
    """A prime is not prime, too small, duplicated, or outside its window."""


class ModulusMismatchError(ConstructionError):
    """Operands live over different moduli."""


class NonInvertibleError(ConstructionError):
    """Inverse requested for an element with a zero coordinate."""

    def __init__(self, coordinate: int, prime: int):
        self.coordinate = coordinate
        self.prime = prime
        super().__init__(f"element is not invertible: coordinate {coordinate} is 0 mod {prime}")


class PreconditionError(ConstructionError):
    """Handler preconditions fail; the input belongs to another handler."""


class UnsupportedExpressionError(ConstructionError):
    """Expression outside the l ≤ 3 case analysis."""


class ExpressionParseError(ConstructionError):
    """Malformed expression text."""

    def __init__(self, message: str, offset: int, text: str = ''):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class RetriesExhaustedError(ConstructionError):
    """A Las Vegas constructor ran out of attempts."""

    def __init__(self, message: str, attempts: int, witnesses: Optional[List[Dict[str, Any]]] = None):
        self.attempts = attempts
        self.witnesses = witnesses or []
        super().__init__(f"{message} (after {attempts} attempts)")


class BudgetExceededError(ConstructionError):
    """A configured point or coordinate limit would be exceeded."""

    def __init__(self, needed: int, budget: int, what: Optional[str] = None):
        self.needed = needed
        self.budget = budget
        if what is None:
            message = f"footprint domain has {needed:,} points, budget is {budget:,}; use sampled mode"
        else:
            message = f"{what} needs {needed:,}, budget is {budget:,}"
        super().__init__(message)


class InfeasibleError(ConstructionError):
    """Strict-mode ε arithmetic cannot be met at desk scale."""

    def __init__(self, message: str, estimate: Optional[Dict[str, Any]] = None):
        self.estimate = estimate or {}
        super().__init__(message)


class CertificateViolation(ConstructionError):
    """An attained value falls outside its certificate."""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        self.witness = witness or {}
        super().__init__(message)
