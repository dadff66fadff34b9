from fractions import Fraction

import numpy as np

from src.residue import Modulus
from src.verify import BulkTerm, ResidueSet, density_report, verify_cover, verify_cover_explicit


def test_full_ring_covers():
    assert verify_cover_explicit(ResidueSet.full(5)).passed
    assert verify_cover(ResidueSet.of(7, [0, 1, 3])).passed


def test_singleton_misses_everything_else():
    report = verify_cover_explicit(ResidueSet.of(5, [0]))
    assert report.failures == 4
    assert report.witness == {'missing': [1, 2, 3, 4]}
    assert not report.to_dict()['passed']


class ZeroCover:
    """A = {0} ∪ {x}: the witness y = 0 always works."""

    def __init__(self, primes, witness=0):
        self.modulus = Modulus.of(primes)
        self.witness = witness

    def element(self, x, shifted):
        return x.copy() if shifted else np.zeros_like(x)

    def difference_witness(self, x):
        return np.full_like(x, self.witness)


def test_functional_sweep_is_exhaustive_on_small_rings():
    report = verify_cover(ZeroCover([5, 7]))
    assert report.mode == 'exhaustive'
    assert report.checked == 35
    assert report.passed


def test_functional_sweep_reports_a_witness():
    report = verify_cover(ZeroCover([5], witness=1))
    assert report.failures == 5
    assert report.witness['y'] == [1]


def test_union_bound():
    report = density_report([('E1', 1, 5), ('E2', 2, 7)], target=0.5)
    assert report.bound == Fraction(17, 35)
    assert report.exact
    assert report.meets_target
    assert not report.vacuous
    assert report.to_dict()['bound'] == '17/35'


def test_folded_terms():
    bulk = BulkTerm.of('cases', [1, 2], [5, 7])
    assert bulk.upper == Fraction(4, 5)
    assert abs(bulk.estimate - (1 / 5 + 2 / 7)) < 1e-12
    report = density_report([('E1', 1, 5)], target=Fraction(1, 2), bulk=[bulk])
    assert report.bound == 1
    assert report.vacuous
    assert not report.meets_target
    assert not report.exact
