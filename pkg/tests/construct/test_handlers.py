import math

import pytest

from src.construct.handler_factory import construct_expression, get_handler
from src.construct.handlers import HANDLERS
from src.core.exceptions import PreconditionError, PrimeError, UnsupportedExpressionError
from src.expr import CaseTag, classify, parse_expression
from src.verify import image_exhaustive


def test_every_case_tag_has_a_handler():
    assert set(HANDLERS) == {tag.value for tag in CaseTag}
    for tag in CaseTag:
        assert get_handler(tag).case_tag == tag.value


def test_unknown_tag():
    with pytest.raises(UnsupportedExpressionError):
        get_handler('NOT_A_CASE')


def test_handler_refuses_other_cases():
    classification = classify(parse_expression("a(x)*a(x) + a(x) + x"))
    with pytest.raises(PreconditionError):
        get_handler(CaseTag.AFFINE).construct(classification, [101])


def test_affine_block_has_a_single_value():
    expr = parse_expression("a(x)*b(y) + (a(x)+x)*(b(y)+y)")
    construction = construct_expression(expr, [101])
    assert construction.tag == 'AFFINE'
    assert construction.certificate.claimed_size == 1
    report = image_exhaustive(expr, construction.maps, construction.certificate)
    assert report.image_size == 1
    assert report.passed


def test_basic_identification_over_two_primes():
    expr = parse_expression("a(x)*b(y) + a(x) + x + b(y) + y")
    construction = construct_expression(expr, [5, 7])
    assert construction.modulus.values == (5, 7)
    report = image_exhaustive(expr, construction.maps, construction.certificate)
    assert report.violations == 0
    assert report.image_size <= construction.certificate.claimed_size < 35


def test_single_variable_avoids_initial_segments():
    expr = parse_expression("a(x)*a(x) + a(x) + x")
    construction = construct_expression(expr, [101, 103])
    q = construction.modulus.q
    claimed = construction.certificate.claimed_size
    assert claimed * 16 <= 9 * q
    for p, mask in zip(construction.modulus.values, construction.certificate.allowed):
        assert not mask[:math.ceil(p / 2) - 1].any()
    report = image_exhaustive(expr, construction.maps, construction.certificate)
    assert report.passed
    assert report.image_size <= claimed


def test_construction_report_is_serializable():
    expr = parse_expression("a(x)*b(y) + (a(x)+x)*(b(y)+y)")
    out = construct_expression(expr, [11]).to_dict()
    assert out['tag'] == 'AFFINE'
    assert out['modulus'] == {'primes': [11], 'q': '11'}
    assert out['certificate']['kind'] == 'exact_value_set'


def test_too_few_primes():
    expr = parse_expression("a(x)*b(y) + a(x) + x + b(y) + y")
    with pytest.raises(PrimeError):
        construct_expression(expr, [7])


@pytest.mark.parametrize("tag,count", [
    (CaseTag.SINGLE_VAR, 3),
    (CaseTag.ACYCLIC_IDENT, 6),
    (CaseTag.THREE_CYCLE_DEGENERATE, 3),
    (CaseTag.THREE_CYCLE_FIVE_PRIME, 5),
])
def test_handler_defaults_fit_their_construction(tag, count):
    primes = get_handler(tag).resolve_primes(None)
    assert len(primes) >= count
    assert 2 * min(primes) > max(primes)


def test_single_variable_cubic_builds_on_default_primes():
    # every prime must exceed 2d(D+1)
    construction = construct_expression(parse_expression("(a(x)+x)^3 + x"))
    assert construction.tag == 'SINGLE_VAR'
    assert construction.modulus.values == (101, 103, 107)
    assert construction.certificate.claimed_size < construction.modulus.q
