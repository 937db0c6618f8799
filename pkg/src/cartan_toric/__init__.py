"""Exact computations for the toric orbifold attached to a Cartan matrix."""

from .lattice import CartanMatrix, LatticeVector, cartan_matrix, subdiagram
from .dynkin import DynkinTypeError, parse_type, format_type

__all__ = [
    "CartanMatrix",
    "LatticeVector",
    "cartan_matrix",
    "subdiagram",
    "DynkinTypeError",
    "parse_type",
    "format_type",
]
__version__ = "0.1.0"
