"""Desk-scale computations with finite-dimensional C*-algebras.

Everything here works with concrete complex matrices of dimension <= 12:
unital *-subalgebras of M_n and their block structure, pure states and GNS
representations, the equivalence relation those representations induce,
convolution measure algebras on finite relations, sub-relation lattices with
projection-valued measures, numeric Jordan decompositions with a functional
calculus, finite group duality, and orthomodular lattices.
"""

from .linalg import Tolerance, DEFAULT_TOL

__all__ = ["Tolerance", "DEFAULT_TOL"]

__version__ = "0.1.0"
