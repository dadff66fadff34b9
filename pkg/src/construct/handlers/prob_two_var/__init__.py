"""prob_two_var handler module"""
from .handler import ProbTwoVarHandler

__all__ = ['ProbTwoVarHandler']
