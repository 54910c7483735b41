"""Exact computation of stable cohomology invariants for radical square
zero quiver algebras: dimensions, explicit bases, connecting maps, and the
graded Lie bracket, over the rationals or a prime field."""

__version__ = "0.1.0"
