"""final_pq_prob handler module"""
from .handler import FinalPqProbHandler

__all__ = ['FinalPqProbHandler']
