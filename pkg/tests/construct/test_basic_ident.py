import numpy as np
import pytest

from src.construct.basic_ident import basic_ident
from src.construct.varmap import MapSet
from src.core.exceptions import PreconditionError
from src.expr import parse_expression
from src.residue import Modulus
from src.verify import image_exhaustive, image_values


def pair_maps(lam0, p=11, q=13):
    pair = basic_ident(lam0, 2, 3, 2, 3, p, q)
    return pair, MapSet(Modulus.of((p, q)), {0: pair.alpha, 1: pair.beta})


def test_claim_is_held_to_the_size_factor():
    # Φ ∈ {0, 5, 7, 10} over Z_5 ⊕ Z_7 covers 1 + 5 + 4 + 1 elements
    pair = basic_ident(1, 1, 1, 1, 1, 5, 7, size_factor=2)
    assert pair.branch == 'identified'
    assert pair.certificate.claimed_size == 11
    with pytest.raises(PreconditionError):
        basic_ident(1, 1, 1, 1, 1, 5, 7, size_factor=1)


def test_exact_branches_ignore_the_size_factor():
    pair = basic_ident(1, 1, 0, 1, 1, 5, 7, size_factor=1)
    assert pair.branch == 'mu1_zero'
    assert pair.certificate.claimed_size == 1


@pytest.mark.parametrize("lam0", [2, 3, 4, 6])
def test_product_weight_leaves_the_image_unchanged(lam0):
    base_pair, base_maps = pair_maps(1)
    pair, maps = pair_maps(lam0)
    assert pair.branch == base_pair.branch == 'identified'
    x = np.array([[a, b] for a in range(11) for b in range(13)], dtype=np.int64)
    for var in (0, 1):
        assert np.array_equal(maps.evaluate(var, x), base_maps.evaluate(var, x))

    scaled = parse_expression(f"{lam0}*a(x)*b(y) + 2*a(x) + 3*x + 2*b(y) + 3*y")
    plain = parse_expression("a(x)*b(y) + 2*a(x) + 3*x + 2*b(y) + 3*y")
    assert np.array_equal(image_values(scaled, maps), image_values(plain, base_maps))
    report = image_exhaustive(scaled, maps, pair.certificate)
    assert report.passed


def test_product_weight_divisible_by_a_prime_drops_the_product():
    pair, _ = pair_maps(11)
    assert pair.branch == 'no_product'
    assert pair.certificate.claimed_size == 1
