"""Groebner-basis verification of F-regularity certificates for the symplectic
nullcone and the general linear varieties of complexes."""

__version__ = "0.1.0"
