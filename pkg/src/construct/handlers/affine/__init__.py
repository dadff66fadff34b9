"""affine handler module"""
from .handler import AffineHandler

__all__ = ['AffineHandler']
