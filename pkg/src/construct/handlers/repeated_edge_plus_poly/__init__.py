"""repeated_edge_plus_poly handler module"""
from .handler import RepeatedEdgePlusPolyHandler

__all__ = ['RepeatedEdgePlusPolyHandler']
