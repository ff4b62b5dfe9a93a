"""Finite-scale toolkit for nets of operator algebras over causal index posets.

Subpackages cover: poset axioms and causal disjointness, singular simplices
and path homotopy, fundamental groups of posets, 1+1D causal lattices and
diamonds, finite-dimensional *-algebras and states, unitary 1-cocycles with
their functor calculus, a symbolic locally covariant toy theory, and FFT-based
wavefront set estimation.
"""

__version__ = "0.1.0"
