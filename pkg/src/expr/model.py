"""
Formal expressions arising from lA² + kA.

An expression is a sum of products of atoms α_v(x_v) + c·x_v plus a linear
part Σ λ_v α_v(x_v) + μ_v x_v. Variables are small integer ids.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import sympy


@dataclass(frozen=True, order=True)
class Atom:
    """α_var(x_var) + shift·x_var."""

    var: int
    shift: int = 0


@dataclass(frozen=True)
class Term:
    """coeff · Π factors, factors kept sorted."""

    coeff: int
    factors: Tuple[Atom, ...]

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(sorted(self.factors)))

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({a.var for a in self.factors}))

    @property
    def is_mixed(self) -> bool:
        return len(self.variables) > 1

    @property
    def is_loop(self) -> bool:
        """Same-variable term of degree ≥ 2."""
        return self.degree >= 2 and len(self.variables) == 1

    def key(self) -> Tuple:
        return (tuple((a.var, a.shift) for a in self.factors), self.coeff)


@dataclass(frozen=True, order=True)
class Linear:
    """λ·α_var(x_var) + μ·x_var."""

    var: int
    lam: int = 0
    mu: int = 0


@dataclass(frozen=True)
class Expression:
    terms: Tuple[Term, ...] = ()
    linear: Tuple[Linear, ...] = ()

    @property
    def variables(self) -> Tuple[int, ...]:
        found = {v for t in self.terms for v in t.variables}
        found.update(lin.var for lin in self.linear if lin.lam or lin.mu)
        return tuple(sorted(found))

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def quadratic_terms(self) -> Tuple[Term, ...]:
        return tuple(t for t in self.terms if t.degree >= 2)

    @property
    def mixed_terms(self) -> Tuple[Term, ...]:
        return tuple(t for t in self.terms if t.is_mixed)

    @property
    def loop_terms(self) -> Tuple[Term, ...]:
        return tuple(t for t in self.terms if t.is_loop)

    @property
    def max_degree(self) -> int:
        return max((t.degree for t in self.terms), default=1 if self.linear else 0)

    def linear_of(self, var: int) -> Linear:
        for lin in self.linear:
            if lin.var == var:
                return lin
        return Linear(var)

    def quadratic_variables(self) -> Tuple[int, ...]:
        return tuple(sorted({v for t in self.terms for v in t.variables}))

    def linear_only_variables(self) -> Tuple[int, ...]:
        """Variables appearing only in the linear part (while some product term exists)."""
        if not self.terms:
            return ()
        quad = set(self.quadratic_variables())
        return tuple(v for v in self.variables if v not in quad)

    def coefficients(self) -> List[int]:
        """Every integer coefficient and shift, for prime-size preconditions."""
        values = [t.coeff for t in self.terms]
        values += [a.shift for t in self.terms for a in t.factors]
        values += [lin.lam for lin in self.linear] + [lin.mu for lin in self.linear]
        return values

    def without_variables(self, drop: Iterable[int]) -> 'Expression':
        drop = set(drop)
        return Expression(
            tuple(t for t in self.terms if not set(t.variables) & drop),
            tuple(lin for lin in self.linear if lin.var not in drop),
        )

    def restricted_to(self, keep: Iterable[int]) -> 'Expression':
        keep = set(keep)
        return Expression(
            tuple(t for t in self.terms if set(t.variables) <= keep),
            tuple(lin for lin in self.linear if lin.var in keep),
        )

    def key(self) -> Tuple:
        return (
            tuple(sorted(t.key() for t in self.terms)),
            tuple((lin.var, lin.lam, lin.mu) for lin in sorted(self.linear)),
        )

    def to_sympy(self, alpha: Optional[Dict[int, sympy.Expr]] = None,
                 x: Optional[Dict[int, sympy.Expr]] = None) -> sympy.Expr:
        """
        Symbolic form; α_v and x_v default to symbols a_v and x_v.

        Args:
            alpha: Optional substitution for α_v
            x: Optional substitution for x_v
        """
        alpha = dict(alpha or {})
        x = dict(x or {})
        for v in set(self.variables) | {lin.var for lin in self.linear}:
            alpha.setdefault(v, sympy.Symbol(f'a{v}'))
            x.setdefault(v, sympy.Symbol(f'x{v}'))
        total = sympy.Integer(0)
        for t in self.terms:
            prod = sympy.Integer(t.coeff)
            for a in t.factors:
                prod *= alpha[a.var] + a.shift * x[a.var]
            total += prod
        for lin in self.linear:
            total += lin.lam * alpha[lin.var] + lin.mu * x[lin.var]
        return sympy.expand(total)


def alpha_symbol(var: int) -> sympy.Symbol:
    return sympy.Symbol(f'a{var}')


def x_symbol(var: int) -> sympy.Symbol:
    return sympy.Symbol(f'x{var}')
