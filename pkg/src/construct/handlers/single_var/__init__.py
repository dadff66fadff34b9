"""single_var handler module"""
from .handler import SingleVarHandler

__all__ = ['SingleVarHandler']
