import numpy as np
import pytest

from src.construct import (
    AvoidedValues, BlockProduct, ExactValueSet, LinearFunctionalMembership, PerCoordinateSet, SizeBoundOnly,
)
from src.construct.basic_ident import identification_set
from src.construct.certificate import decode_values, encode_values


def rows(*values):
    return np.array(values, dtype=np.int64)


def test_exact_value_set():
    cert = ExactValueSet.from_integers([5, 7], [0, 3, 38])
    # 38 ≡ 3 mod 35
    assert cert.claimed_size == 2
    assert cert.contains(rows([0, 0], [3, 3])).all()
    assert not cert.contains(rows([1, 0])).any()


def test_per_coordinate_set():
    allowed = (np.array([True, False, True]), np.array([True, True, False, False, False]))
    cert = PerCoordinateSet((3, 5), allowed)
    assert cert.claimed_size == 4
    assert cert.contains(rows([2, 1], [1, 0], [0, 4])).tolist() == [True, False, False]


def test_linear_functional_counts_preimages():
    # Φ ∈ {0, 5, 7, 10} over Z_5 ⊕ Z_7: 1 + 5 + 4 + 1 ring elements
    cert = LinearFunctionalMembership((5, 7), (1, 1), identification_set(5, 7))
    assert np.flatnonzero(cert.allowed).tolist() == [0, 5, 7, 10]
    assert cert.claimed_size == 11
    assert cert.contains(rows([0, 0], [4, 6], [1, 1])).tolist() == [True, True, False]


def test_linear_functional_with_reference_prime():
    allowed = np.zeros(3, dtype=bool)
    allowed[0] = True
    cert = LinearFunctionalMembership((2, 2 + 1), (1, 1), allowed, reference=3)
    assert cert.histogram().tolist() == [2, 2, 2]
    assert cert.claimed_size == 2


def test_linear_functional_rejects_bad_mask():
    with pytest.raises(ValueError):
        LinearFunctionalMembership((5, 7), (1, 1), np.ones(5, dtype=bool))


def test_avoided_values_and_block_product():
    avoided = AvoidedValues((5,), rows([0], [0]))
    assert avoided.claimed_size == 4
    exact = ExactValueSet.from_integers([7], [1])
    product = BlockProduct((((0,), avoided), ((1,), exact)))
    assert product.claimed_size == 4
    assert product.contains(rows([1, 1], [0, 1], [1, 2])).tolist() == [True, False, False]
    assert product.to_dict()['kind'] == 'block_product'


def test_size_bound_only_accepts_everything():
    cert = SizeBoundOnly(10)
    assert cert.contains(rows([1], [2])).all()
    assert cert.to_dict() == {'kind': 'size_bound_only', 'claimed_size': '10'}


def test_codes_are_mixed_radix():
    values = rows([1, 2], [4, 6])
    codes = encode_values(values, (5, 7))
    assert codes.tolist() == [1 + 2 * 5, 4 + 6 * 5]
    assert (decode_values(codes, (5, 7)) == values).all()
