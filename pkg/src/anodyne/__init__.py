"""Finite-model verification of the Leibniz calculus.

Pushout-products, pullback-homs, adjunction transposes and
orthogonality over finite index sets, lattice-valued simplices and
horns, and the constructive retract argument that exhibits inner horn
inclusions as anodyne, checked both over concrete finite bounded
distributive lattices and symbolically.
"""

__version__ = "0.1.0"
