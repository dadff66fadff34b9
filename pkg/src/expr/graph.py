"""
The quadratic graph G_E and its effective (factorized) form.

A group of mixed terms on one variable pair, Σ w_t(α_u + a_t x_u)(α_v + b_t x_v),
has coefficient matrix [[W, Σwb], [Σwa, Σwab]]. It factorizes into a single
product iff the determinant vanishes; otherwise it is a repeated edge.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..core.exceptions import UnsupportedExpressionError
from .model import Expression


@dataclass(frozen=True)
class QuadGraph:
    """One edge per mixed term occurrence; loops counted separately."""

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    loops: Dict[int, int] = field(default_factory=dict)

    @property
    def isolated(self) -> Tuple[int, ...]:
        """Vertices with no edge (they may still carry loops)."""
        touched = {v for e in self.edges for v in e}
        return tuple(v for v in self.vertices if v not in touched)

    def describe(self) -> str:
        parts = [f"{u}-{v}" for u, v in self.edges]
        parts += [f"loop@{v}×{n}" for v, n in sorted(self.loops.items())]
        return ', '.join(parts) if parts else 'no quadratic terms'


def build_graph(expr: Expression) -> QuadGraph:
    """
    Multigraph with one edge per mixed term occurrence.

    Raises:
        UnsupportedExpressionError: A term mixes variables at degree above 2
    """
    edges: List[Tuple[int, int]] = []
    loops: Dict[int, int] = defaultdict(int)
    for t in expr.quadratic_terms:
        if t.is_mixed:
            if t.degree > 2:
                raise UnsupportedExpressionError(f"degree {t.degree} term in variables {t.variables} has no graph edge")
            u, v = t.variables
            edges.extend([(u, v)] * abs(t.coeff))
        else:
            loops[t.variables[0]] += abs(t.coeff)
    return QuadGraph(expr.variables, tuple(sorted(edges)), dict(loops))


@dataclass(frozen=True)
class EdgeGroup:
    """All mixed terms on the pair (u, v), u < v, as (weight, shift_u, shift_v)."""

    u: int
    v: int
    terms: Tuple[Tuple[int, int, int], ...]

    @property
    def weight(self) -> int:
        return sum(w for w, _, _ in self.terms)

    @property
    def shift_sum_u(self) -> int:
        return sum(w * a for w, a, _ in self.terms)

    @property
    def shift_sum_v(self) -> int:
        return sum(w * b for w, _, b in self.terms)

    @property
    def shift_product_sum(self) -> int:
        return sum(w * a * b for w, a, b in self.terms)

    @property
    def determinant(self) -> int:
        return self.weight * self.shift_product_sum - self.shift_sum_u * self.shift_sum_v

    @property
    def factorizes(self) -> bool:
        return self.weight != 0 and self.determinant == 0

    def cancelling_shift(self, var: int) -> Fraction:
        """
        Slope s with α_var = −s·x_var killing the whole (factorized) group.

        The group equals (1/W)(Wα_u + Σwa·x_u)(Wα_v + Σwb·x_v).
        """
        total = self.shift_sum_u if var == self.u else self.shift_sum_v
        return Fraction(total, self.weight)

    def other(self, var: int) -> int:
        return self.v if var == self.u else self.u


def edge_groups(expr: Expression) -> List[EdgeGroup]:
    grouped: Dict[Tuple[int, int], List[Tuple[int, int, int]]] = defaultdict(list)
    for t in expr.mixed_terms:
        a, b = t.factors
        grouped[(a.var, b.var)].append((t.coeff, a.shift, b.shift))
    return [EdgeGroup(u, v, tuple(terms)) for (u, v), terms in sorted(grouped.items())]


def is_forest(vertices, groups: List[EdgeGroup]) -> bool:
    """True iff every group factorizes and the simple graph has no cycle."""
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in groups:
        if not g.factorizes:
            return False
        ru, rv = find(g.u), find(g.v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def adjacency(groups: List[EdgeGroup]) -> Dict[int, List[EdgeGroup]]:
    adj: Dict[int, List[EdgeGroup]] = defaultdict(list)
    for g in groups:
        adj[g.u].append(g)
        adj[g.v].append(g)
    return adj


def find_group(groups: List[EdgeGroup], u: int, v: int) -> Optional[EdgeGroup]:
    a, b = min(u, v), max(u, v)
    for g in groups:
        if (g.u, g.v) == (a, b):
            return g
    return None
