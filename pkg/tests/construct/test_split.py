import numpy as np
import pytest

from src.construct.split import split_single_vars
from src.core.exceptions import PreconditionError
from src.expr import parse_expression
from src.verify import image_exhaustive, image_values

SQUARE_AND_LINE = "a(x)*a(x) + x + 2*b(y) + y"


def test_linear_blocks_are_solved_to_zero():
    expr = parse_expression("2*a(x) + x + 3*b(y) + y")
    modulus, maps, certificate, _ = split_single_vars(expr, [11])
    assert certificate.kind == 'exact_value_set'
    report = image_exhaustive(expr, maps, certificate)
    assert report.image_size == 1
    assert report.passed


def test_each_coordinate_gets_its_own_bound():
    expr = parse_expression(SQUARE_AND_LINE)
    modulus, maps, certificate, measurements = split_single_vars(expr, [13, 17], constant_c=0.5)
    # ⌊0.5·13^(3/4)⌋ = 3 and ⌊0.5·17^(3/4)⌋ = 4; the linear block is exact
    assert [sorted(b) for b in measurements['bounds']] == [[0, 3], [0, 4]]
    assert measurements['coordinate_totals'] == [3, 4]
    assert certificate.kind == 'per_coordinate_set'
    assert [int(mask.sum()) for mask in certificate.allowed] == [7, 9]

    values = image_values(expr, maps)
    for i, (p, total) in enumerate(zip(modulus.values, measurements['coordinate_totals'])):
        centered = np.where(values[:, i] > p // 2, values[:, i] - p, values[:, i])
        assert np.abs(centered).max() <= total
    assert image_exhaustive(expr, maps, certificate).passed


def test_mixed_terms_are_rejected():
    with pytest.raises(PreconditionError):
        split_single_vars(parse_expression("a(x)*b(y) + a(x)*a(x) + b(y)*b(y)"), [11])
