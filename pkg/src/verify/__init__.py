"""Ground truth: image enumeration, bitset sumsets, cover checks, density bounds."""

from .image import ImageReport, image_exhaustive, image_sampled, image_values
from .sumset import ResidueSet, sumset, difference_set, iterated_sumset, product_set, l_sq_plus_k
from .cover import CoverReport, verify_cover, verify_cover_explicit, verify_cover_functional
from .density import BulkTerm, DensityReport, density_report, certificate_fraction
from .experiment import MinImageResult, min_image_experiment

__all__ = [
    'ImageReport', 'image_exhaustive', 'image_sampled', 'image_values',
    'ResidueSet', 'sumset', 'difference_set', 'iterated_sumset', 'product_set', 'l_sq_plus_k',
    'CoverReport', 'verify_cover', 'verify_cover_explicit', 'verify_cover_functional',
    'BulkTerm', 'DensityReport', 'density_report', 'certificate_fraction',
    'MinImageResult', 'min_image_experiment',
]
