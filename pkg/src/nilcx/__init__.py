"""Exact computations with complex structures on nilpotent Lie algebras."""

__version__ = "0.1.0"

from .exactlin import GaussianRational, Matrix, Subspace
from .liecore import LieAlgebra, a_sequence, lower_central_series, nil_index
from .cxstructs import AlmostComplexStructure, classify

__all__ = [
    "__version__",
    "GaussianRational",
    "Matrix",
    "Subspace",
    "LieAlgebra",
    "lower_central_series",
    "nil_index",
    "a_sequence",
    "AlmostComplexStructure",
    "classify",
]
