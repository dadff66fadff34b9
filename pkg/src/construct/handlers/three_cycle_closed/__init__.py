"""three_cycle_closed handler module"""
from .handler import ThreeCycleClosedHandler

__all__ = ['ThreeCycleClosedHandler']
