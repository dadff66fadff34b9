"""three_cycle_five_prime handler module"""
from .handler import ThreeCycleFivePrimeHandler

__all__ = ['ThreeCycleFivePrimeHandler']
