from hypothesis import given, strategies as st

from src.expr import Atom, Expression, Linear, Term, canonicalize, merge
from src.expr.canonical import relabel

N_VARS = 3


@st.composite
def expressions(draw):
    atom = st.builds(Atom, st.integers(0, N_VARS - 1), st.integers(-1, 1))
    terms = draw(st.lists(
        st.builds(lambda c, a, b: Term(c, (a, b)), st.integers(-2, 2).filter(bool), atom, atom),
        max_size=3,
    ))
    linear = draw(st.lists(
        st.builds(Linear, st.integers(0, N_VARS - 1), st.integers(-2, 2), st.integers(-2, 2)),
        max_size=3,
    ))
    return Expression(tuple(terms), tuple(linear))


@given(expressions(), st.permutations(list(range(N_VARS))))
def test_canonical_form_ignores_variable_names(expr, perm):
    renamed = relabel(expr, dict(enumerate(perm)))
    assert canonicalize(renamed) == canonicalize(expr)


@given(expressions())
def test_canonicalize_is_idempotent(expr):
    once = canonicalize(expr)
    assert canonicalize(once) == once
    assert once.variables == tuple(range(once.n_vars))


def test_merge_drops_cancelled_terms():
    expr = Expression(
        (Term(1, (Atom(0), Atom(1))), Term(-1, (Atom(1), Atom(0)))),
        (Linear(0, 1, 0), Linear(0, -1, 2)),
    )
    assert merge(expr) == Expression((), (Linear(0, 0, 2),))
