"""acyclic_ident handler module"""
from .handler import AcyclicIdentHandler

__all__ = ['AcyclicIdentHandler']
