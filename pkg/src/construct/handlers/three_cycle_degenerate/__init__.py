"""three_cycle_degenerate handler module"""
from .handler import ThreeCycleDegenerateHandler

__all__ = ['ThreeCycleDegenerateHandler']
