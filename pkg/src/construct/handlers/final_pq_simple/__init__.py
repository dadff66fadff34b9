"""final_pq_simple handler module"""
from .handler import FinalPqSimpleHandler

__all__ = ['FinalPqSimpleHandler']
