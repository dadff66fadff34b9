import pytest

from src.construct.handler_factory import construct_expression
from src.core.exceptions import PrimeError
from src.expr import CaseTag, classify, parse_expression
from src.randomized import RetryPolicy, RngSpec, final_pq
from src.randomized.final_pq import designated_values
from src.verify import image_exhaustive

PROB_EXPR = "a(x)*b(y) + (a(x)+x)*(b(y)+y) + a(x)*c(z)"
SIMPLE_EXPR = "a(x)*b(y) + (a(x)+x)*(b(y)+y) + a(x)*c(z) + c(z) + z"


def test_routing_on_a_plus_lambda3():
    assert classify(parse_expression(PROB_EXPR)).tag == CaseTag.FINAL_PQ_PROB
    assert classify(parse_expression(SIMPLE_EXPR)).tag == CaseTag.FINAL_PQ_SIMPLE


def test_simple_case_is_constant():
    expr = parse_expression(SIMPLE_EXPR)
    construction = construct_expression(expr, [7, 11])
    report = image_exhaustive(expr, construction.maps, construction.certificate)
    assert report.image_size == 1
    assert report.passed


def test_two_prime_construction_misses_designated_values():
    result = classify(parse_expression(PROB_EXPR))
    modulus, maps, certificate, measurements = final_pq(
        result.normalized, result.params, 13, 11, RngSpec(4), RetryPolicy())
    assert modulus.values == (13, 11)
    assert certificate.claimed_size == 13 * 11 - 2
    assert measurements['verified'] == 'exhaustive'
    assert measurements['image_size'] <= certificate.claimed_size


def test_designated_values():
    assert designated_values(13, 11).tolist() == [[0, 0], [1, 10]]


@pytest.mark.parametrize("p,q", [(11, 13), (23, 11)])
def test_prime_ordering(p, q):
    result = classify(parse_expression(PROB_EXPR))
    with pytest.raises(PrimeError):
        final_pq(result.normalized, result.params, p, q, RngSpec(0), RetryPolicy())
