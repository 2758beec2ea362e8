"""Exceptional Dehn fillings of the chain-link exteriors M3, M4, M5."""

from .slopes import EMPTY, INFINITY, ZERO, Slope, distance, parse_slope
from .instructions import (
    FillingInstruction,
    Manifold,
    OrbitBudget,
    SymmetryKind,
    apply_symmetry,
    contains_pattern,
    dihedral_class_rep,
    factors_through_m3,
    factors_through_m4,
    full_orbit,
    m4_to_m5,
    reduce_to_m3,
)

__all__ = [
    "EMPTY",
    "INFINITY",
    "ZERO",
    "Slope",
    "distance",
    "parse_slope",
    "FillingInstruction",
    "Manifold",
    "OrbitBudget",
    "SymmetryKind",
    "apply_symmetry",
    "contains_pattern",
    "dihedral_class_rep",
    "factors_through_m3",
    "factors_through_m4",
    "full_orbit",
    "m4_to_m5",
    "reduce_to_m3",
]

__version__ = "0.1.0"
