"""split_single_vars handler module"""
from .handler import SplitSingleVarsHandler

__all__ = ['SplitSingleVarsHandler']
