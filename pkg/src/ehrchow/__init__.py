"""Exact Ehrhart delta-vectors and Chow rings of unimodular lattice triangulations.

Modules
-------
geometry
    Lattices, affine hulls, convex hulls and lattice point enumeration.
triangulation
    Triangulations as simplicial complexes; validation, stars, f/h-vectors.
regularity
    Exact LP search for height functions certifying regularity.
ehrhart
    Ehrhart counts, delta-vectors, reciprocity.
chow
    Graded quotients of Stanley-Reisner rings, pullbacks, Lefschetz maps.
ibip
    Conditions for triangulations induced by interior points.
corpus
    Named fixture triangulations.
kernels
    Integer elimination kernels (compiled when available).
"""
from .chow import chow_dims, lefschetz_check
from .corpus import fixture
from .ehrhart import delta_vector
from .geometry import build_polytope, enumerate_lattice_points
from .ibip import is_ibip
from .kernels import BACKEND
from .regularity import find_regularity_witness, verify_witness
from .triangulation import build_triangulation, validate_triangulation

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "build_polytope",
    "build_triangulation",
    "chow_dims",
    "delta_vector",
    "enumerate_lattice_points",
    "find_regularity_witness",
    "fixture",
    "is_ibip",
    "lefschetz_check",
    "validate_triangulation",
    "verify_witness",
]
