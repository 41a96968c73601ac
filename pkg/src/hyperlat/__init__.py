"""Exact lattice, Gaussian-lattice and Coxeter-group tools for real plane
quartics and K3 involutions."""

__version__ = "0.1.0"
