"""Flip distances of polygon triangulations and minimal ball fillings
of the 2-spheres obtained by gluing triangulation pairs."""

__version__ = "0.1.0"
