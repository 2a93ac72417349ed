"""Exact computational toolkit for weighted complete intersections.

The package builds and verifies birational-geometry computations for
quasismooth hypersurfaces and complete intersections in weighted projective
space: quotient singularity classification, weighted blowups and their
discrepancies, rank-two toric two-ray games, and certified elementary link
constructions, all in exact arithmetic over Q or a prime field.
"""

__version__ = "0.1.0"
