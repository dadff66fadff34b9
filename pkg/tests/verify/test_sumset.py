import pytest
from hypothesis import given, settings, strategies as st

from src.core.exceptions import BudgetExceededError
from src.core.settings import Settings
from src.verify import ResidueSet, difference_set, l_sq_plus_k, product_set, sumset

PERFECT_7 = ResidueSet.of(7, [0, 1, 3])


def test_bitset_basics():
    a = ResidueSet.of(7, [1, 8, 3])
    assert a.to_list() == [1, 3]
    assert 8 in a and 2 not in a
    assert a.rotate(5).to_list() == [1, 6]
    assert a.negate().to_list() == [4, 6]


def test_small_sumsets():
    assert l_sq_plus_k(PERFECT_7, 0, 2).to_list() == [0, 1, 2, 3, 4, 6]
    assert difference_set(PERFECT_7).is_full()
    assert product_set(PERFECT_7).to_list() == [0, 1, 2, 3]
    assert l_sq_plus_k(PERFECT_7, 1, 0) == product_set(PERFECT_7)
    assert l_sq_plus_k(PERFECT_7, 0, 0).to_list() == [0]


def test_mismatched_moduli():
    with pytest.raises(ValueError):
        sumset(ResidueSet.of(5, [1]), ResidueSet.of(7, [1]))


def test_bitset_limit():
    tight = Settings()
    tight.verification.bitset_limit = 16
    with pytest.raises(BudgetExceededError):
        difference_set(ResidueSet.of(17, [1]), tight)


@st.composite
def residue_sets(draw):
    q = draw(st.integers(2, 40))
    a = draw(st.sets(st.integers(0, q - 1), min_size=1, max_size=q))
    return q, a


@given(residue_sets(), st.integers(0, 2), st.integers(0, 2))
def test_matches_naive_sums(case, l, k):
    q, a = case
    expected = {0}
    for _ in range(l):
        expected = {(s + x * y) % q for s in expected for x in a for y in a}
    for _ in range(k):
        expected = {(s + x) % q for s in expected for x in a}
    assert set(l_sq_plus_k(ResidueSet.of(q, a), l, k)) == expected


@st.composite
def large_residue_sets(draw):
    q = draw(st.integers(2, 1000))
    a = draw(st.sets(st.integers(0, q - 1), min_size=1, max_size=min(q, 50)))
    return q, a


@pytest.mark.slow
@settings(max_examples=300, deadline=None)
@given(large_residue_sets(), st.integers(0, 2), st.integers(0, 2))
def test_matches_naive_sums_at_scale(case, l, k):
    q, a = case
    expected = {0}
    products = {x * y % q for x in a for y in a}
    for _ in range(l):
        expected = {(s + t) % q for s in expected for t in products}
    for _ in range(k):
        expected = {(s + x) % q for s in expected for x in a}
    assert set(l_sq_plus_k(ResidueSet.of(q, a), l, k)) == expected
