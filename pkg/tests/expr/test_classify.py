import pytest

from src.core.exceptions import UnsupportedExpressionError
from src.expr import CaseTag, build_graph, canonicalize, classify, parse_expression


@pytest.mark.parametrize("text,tag", [
    ("a(x)*b(y) + a(x) + x + b(y) + y", CaseTag.BASIC_IDENT),
    ("a(x)*a(x) + a(x) + x", CaseTag.SINGLE_VAR),
    ("a(x)*a(x) + b(y)*b(y)", CaseTag.SPLIT_SINGLE_VARS),
    ("a(x)*b(y) + b(y)*c(z) + c(z)*a(x)", CaseTag.THREE_CYCLE_DEGENERATE),
    ("(a(x)+x)*b(y) + (b(y)+y)*c(z) + (c(z)+z)*a(x)", CaseTag.THREE_CYCLE_CLOSED),
    ("a(x)*(b(y)+y) + b(y)*(c(z)+z) + c(z)*a(x)", CaseTag.THREE_CYCLE_FIVE_PRIME),
    ("(a(x)+x)*(a(x)) + (a(x)+x)*(b(y)+y)", CaseTag.ACYCLIC_IDENT),
    ("a(x)*b(y) + (a(x)+x)*(b(y)+y)", CaseTag.AFFINE),
    ("a(x)*a(x) + a(x)*b(y) + (a(x)+x)*(b(y)+y)", CaseTag.PROB_TWO_VAR),
])
def test_case_routing(text, tag):
    assert classify(parse_expression(text)).tag == tag


@pytest.mark.parametrize("text", [
    "a(x)*b(y) + b(y) + y",
    "a(x)*b(y) + (a(x)+x)*(b(y)+y) + 2*x",
    "a(x)*(b(y)+y) + b(y)*(c(z)+z) + c(z)*a(x)",
])
def test_transform_reverts_to_the_input(text):
    expr = parse_expression(text)
    result = classify(expr)
    assert result.transform.apply(expr) == result.normalized
    assert canonicalize(result.transform.revert(result.normalized)) == expr


def test_affine_normal_form():
    result = classify(parse_expression("a(x)*b(y) + (a(x)+x)*(b(y)+y)"))
    assert result.params['nu1'] == 1
    assert result.params['nu2'] == 1


def test_linear_only_variable_is_cancelled():
    result = classify(parse_expression("a(x)*a(x) + a(x) + b(y) + y"))
    assert result.tag == CaseTag.SINGLE_VAR
    assert result.normalized.n_vars == 1


@pytest.mark.parametrize("text", [
    "a(x)*b(y) + b(y)*c(z) + c(z)*d(w) + d(w)*a(x)",
    "a(x)*b(y)*c(z) + x",
    "a(x)*a(x) + y",
])
def test_unsupported_expressions(text):
    with pytest.raises(UnsupportedExpressionError):
        classify(parse_expression(text))


def test_graph_of_triangle():
    graph = build_graph(parse_expression("a(x)*b(y) + b(y)*c(z) + c(z)*a(x)"))
    assert graph.edges == ((0, 1), (0, 2), (1, 2))
    assert graph.isolated == ()
    assert graph.loops == {}
