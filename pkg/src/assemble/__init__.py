"""Staged assembly of a set with A − A = Z_Q and small lA² + kA."""

from .plan import ExpressionPlan, plan
from .cases import all_cases, case_rank, case_ranks, falling_factorial, unrank_case
from .phi import PhiMap, StagedModulus, LinearCaseStage, GenericCaseStage, StageOneBlock
from .estimate import Estimate, StageEstimate, estimate
from .assembler import CoverSet, RouteResult, assemble
from .sampling import SampledElement, SumSampleReport, sample_sum_element, sample_sum_elements

__all__ = [
    'ExpressionPlan', 'plan',
    'all_cases', 'case_rank', 'case_ranks', 'falling_factorial', 'unrank_case',
    'PhiMap', 'StagedModulus', 'LinearCaseStage', 'GenericCaseStage', 'StageOneBlock',
    'Estimate', 'StageEstimate', 'estimate',
    'CoverSet', 'RouteResult', 'assemble',
    'SampledElement', 'SumSampleReport', 'sample_sum_element', 'sample_sum_elements',
]
