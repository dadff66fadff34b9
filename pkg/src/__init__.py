"""Small polynomial images with full difference sets: constructions and verification"""
__version__ = "1.0.0"
