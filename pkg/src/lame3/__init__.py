"""Monodromy toolkit for the third-order generalized Lame equation

    y''' - (alpha wp + B) y' + beta wp' y = 0.
"""
__version__ = "0.1.0"
