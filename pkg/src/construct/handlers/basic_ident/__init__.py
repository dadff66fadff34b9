"""basic_ident handler module"""
from .handler import BasicIdentHandler

__all__ = ['BasicIdentHandler']
