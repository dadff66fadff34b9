import pytest

from src.core.exceptions import UnsupportedExpressionError
from src.expr import build_graph, enumerate_expressions, parse_expression


@pytest.mark.parametrize("l,k", [
    (1, 0), (1, 1), (1, 2), (2, 0), (2, 1),
    pytest.param(3, 0, marks=pytest.mark.slow),
    pytest.param(3, 1, marks=pytest.mark.slow),
])
def test_every_product_is_one_edge_or_one_loop(l, k):
    for expr in enumerate_expressions(l, k):
        graph = build_graph(expr)
        assert len(graph.edges) + sum(graph.loops.values()) == l
        assert all(u < v for u, v in graph.edges)
        assert set(graph.loops) <= set(graph.vertices)


def test_merged_products_keep_their_multiplicity():
    graph = build_graph(parse_expression("a(x)*b(y) + a(x)*b(y) + a(x)*a(x)"))
    assert graph.edges == ((0, 1), (0, 1))
    assert list(graph.loops.values()) == [1]
    assert graph.describe().startswith('0-1, 0-1, loop@')


def test_isolated_vertex_with_a_loop():
    graph = build_graph(parse_expression("a(x)*b(y) + c(z)*c(z)"))
    assert len(graph.edges) == 1
    assert len(graph.isolated) == 1
    assert graph.loops == {graph.isolated[0]: 1}


def test_degree_three_mixed_term_has_no_edge():
    with pytest.raises(UnsupportedExpressionError):
        build_graph(parse_expression("a(x)*b(y)*c(z) + x"))
