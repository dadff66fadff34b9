"""Formal expressions from lA² + kA: model, parsing, canonical forms, case analysis."""

from .model import Atom, Term, Linear, Expression
from .canonical import canonicalize, canonicalize_with_map, merge
from .parser import parse_expression, format_expression
from .enumerate import enumerate_expressions
from .graph import build_graph, edge_groups
from .transform import Transform
from .classify import CaseTag, Classification, classify

__all__ = [
    'Atom', 'Term', 'Linear', 'Expression',
    'canonicalize', 'canonicalize_with_map', 'merge',
    'parse_expression', 'format_expression', 'enumerate_expressions',
    'build_graph', 'edge_groups', 'Transform',
    'CaseTag', 'Classification', 'classify',
]
