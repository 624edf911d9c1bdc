"""
Exact lattice, discriminant-form, code and trace computations for K3
surfaces with nine cusps.
"""

__version__ = "0.1.0"
