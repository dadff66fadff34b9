"""
Normalizing transforms, recorded as data.

Each primitive rewrites an expression E into E' such that maps built for E'
pull back to maps for E with the same image. Pullback of maps lives next to
the map types (construct.varmap); this module only rewrites expressions.
"""

from dataclasses import dataclass
from typing import Dict, Tuple, Union

from ..core.exceptions import PreconditionError
from .canonical import merge, relabel
from .model import Atom, Expression, Linear, Term


@dataclass(frozen=True)
class Rename:
    """Variable v of E becomes mapping[v] in E'."""

    mapping: Tuple[Tuple[int, int], ...]

    @property
    def as_dict(self) -> Dict[int, int]:
        return dict(self.mapping)


@dataclass(frozen=True)
class Shift:
    """α'_var = α_var + a·x_var."""

    var: int
    a: int


@dataclass(frozen=True)
class CancelLinear:
    """var occurs only as λα + μx; α = −λ⁻¹μ·x removes it."""

    var: int
    lam: int
    mu: int


@dataclass(frozen=True)
class Regroup:
    """Replace the mixed terms on (u, v) by the single product W·α_u·α_v."""

    u: int
    v: int
    original: Tuple[Term, ...]


Primitive = Union[Rename, Shift, CancelLinear, Regroup]


def _shift(expr: Expression, var: int, a: int) -> Expression:
    terms = tuple(
        Term(t.coeff, tuple(Atom(f.var, f.shift - a) if f.var == var else f for f in t.factors))
        for t in expr.terms
    )
    linear = tuple(
        Linear(lin.var, lin.lam, lin.mu - lin.lam * a) if lin.var == var else lin
        for lin in expr.linear
    )
    return Expression(terms, linear)


def _regroup(expr: Expression, u: int, v: int) -> Tuple[Expression, Tuple[Term, ...]]:
    group = tuple(t for t in expr.mixed_terms if set(t.variables) == {u, v})
    weight = sum(t.coeff for t in group)
    su = sum(t.coeff * next(f.shift for f in t.factors if f.var == u) for t in group)
    sv = sum(t.coeff * next(f.shift for f in t.factors if f.var == v) for t in group)
    suv = sum(t.coeff * t.factors[0].shift * t.factors[1].shift for t in group)
    if su != 0 or sv != 0 or suv != 0:
        raise PreconditionError(f"terms on ({u},{v}) do not collapse to a single product")
    rest = tuple(t for t in expr.terms if t not in group)
    merged = Term(weight, (Atom(u, 0), Atom(v, 0)))
    return Expression(rest + (merged,), expr.linear), group


@dataclass(frozen=True)
class Transform:
    """Sequence of primitives taking an expression E to its normalized E'."""

    steps: Tuple[Primitive, ...] = ()

    def then(self, step: Primitive) -> 'Transform':
        return Transform(self.steps + (step,))

    def apply(self, expr: Expression) -> Expression:
        """E → E'."""
        out = expr
        for step in self.steps:
            if isinstance(step, Rename):
                out = relabel(out, step.as_dict)
            elif isinstance(step, Shift):
                out = _shift(out, step.var, step.a)
            elif isinstance(step, CancelLinear):
                lin = out.linear_of(step.var)
                if any(step.var in t.variables for t in out.terms) or (lin.lam, lin.mu) != (step.lam, step.mu):
                    raise PreconditionError(f"variable {step.var} is not linear-only as recorded")
                out = out.without_variables([step.var])
            elif isinstance(step, Regroup):
                out, _ = _regroup(out, step.u, step.v)
        return merge(out)

    def revert(self, expr: Expression) -> Expression:
        """E' → E."""
        out = expr
        for step in reversed(self.steps):
            if isinstance(step, Rename):
                out = relabel(out, {new: old for old, new in step.mapping})
            elif isinstance(step, Shift):
                out = _shift(out, step.var, -step.a)
            elif isinstance(step, CancelLinear):
                out = Expression(out.terms, out.linear + (Linear(step.var, step.lam, step.mu),))
            elif isinstance(step, Regroup):
                rest = tuple(t for t in out.terms if set(t.variables) != {step.u, step.v})
                out = Expression(rest + step.original, out.linear)
        return merge(out)

    def describe(self) -> str:
        if not self.steps:
            return 'identity'
        parts = []
        for step in self.steps:
            if isinstance(step, Rename):
                parts.append('rename ' + ','.join(f"{a}->{b}" for a, b in step.mapping))
            elif isinstance(step, Shift):
                parts.append(f"a{step.var} += {step.a}*x{step.var}")
            elif isinstance(step, CancelLinear):
                parts.append(f"cancel linear-only x{step.var}")
            else:
                parts.append(f"regroup ({step.u},{step.v})")
        return '; '.join(parts)

    def to_list(self):
        out = []
        for step in self.steps:
            if isinstance(step, Rename):
                out.append({'rename': [list(p) for p in step.mapping]})
            elif isinstance(step, Shift):
                out.append({'shift': {'var': step.var, 'a': step.a}})
            elif isinstance(step, CancelLinear):
                out.append({'cancel_linear': {'var': step.var, 'lam': step.lam, 'mu': step.mu}})
            else:
                out.append({'regroup': [step.u, step.v]})
        return out


def make_regroup(expr: Expression, u: int, v: int) -> Regroup:
    """Regroup primitive recording the current terms on (u, v)."""
    _, group = _regroup(expr, u, v)
    return Regroup(u, v, group)
