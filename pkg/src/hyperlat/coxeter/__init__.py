"""Coxeter diagrams, involution classes and their reductions mod 2."""
