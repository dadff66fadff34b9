import pytest

from src.construct.handler_factory import construct_expression
from src.core.exceptions import PreconditionError
from src.core.settings import Settings
from src.expr import parse_expression
from src.verify import image_exhaustive

LOOP_AND_EDGE = "(a(x)+x)*(a(x)) + (a(x)+x)*(b(y)+y)"


@pytest.fixture(scope='module')
def loop_and_edge():
    expr = parse_expression(LOOP_AND_EDGE)
    return expr, construct_expression(expr, [7, 11])


def test_forest_with_a_loop_is_identified(loop_and_edge):
    expr, construction = loop_and_edge
    assert construction.tag == 'ACYCLIC_IDENT'
    report = image_exhaustive(expr, construction.maps, construction.certificate)
    assert report.violations == 0
    assert report.passed


def test_owner_small_values_stay_within_the_constant(loop_and_edge):
    _, construction = loop_and_edge
    ledger = construction.measurements['ledger']
    bounded = [entry for entry in ledger if entry['small_bound'] is not None]
    assert bounded
    for entry in bounded:
        lo, hi = entry['small_range']
        assert max(-lo, hi) <= entry['small_bound']
    assert construction.measurements['small_bound_total'] == pytest.approx(
        sum(entry['small_bound'] for entry in bounded))


def test_tight_constant_rejects_the_owner_coordinate():
    # 0.1·7^(3/4) < 1, and some t² + xt + k has no root mod 7
    settings = Settings()
    settings.construction.strong_ident_c = 0.1
    with pytest.raises(PreconditionError):
        construct_expression(parse_expression(LOOP_AND_EDGE), [7, 11], settings=settings)
