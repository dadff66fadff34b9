"""Deterministic constructions: maps, certificates and the case handlers."""

from .varmap import LiftTerm, LiftCombination, ComposedTable, VarMap, MapSet, stack_maps
from .certificate import (
    Certificate, ExactValueSet, PerCoordinateSet, LinearFunctionalMembership,
    AvoidedValues, SizeBoundOnly, BlockProduct,
)
from .result import Construction

__all__ = [
    'LiftTerm', 'LiftCombination', 'ComposedTable', 'VarMap', 'MapSet', 'stack_maps',
    'Certificate', 'ExactValueSet', 'PerCoordinateSet', 'LinearFunctionalMembership',
    'AvoidedValues', 'SizeBoundOnly', 'BlockProduct', 'Construction',
]
