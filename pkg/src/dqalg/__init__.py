"""Exact computation in the quantized matrix algebra D_q(n)."""

from .freealg import BadDimension, generate_relations, verify_gsb
from .pbw import DEG_PAPER_LEX, NATURAL_LEX, PAPER_LEX, DqAlgebra, OrderSpec, PBWElement, validate_ordering
from .scalarfield import SYMBOLIC, FieldConfig, Scalar

__all__ = [
    "BadDimension",
    "generate_relations",
    "verify_gsb",
    "DEG_PAPER_LEX",
    "NATURAL_LEX",
    "PAPER_LEX",
    "DqAlgebra",
    "OrderSpec",
    "PBWElement",
    "validate_ordering",
    "SYMBOLIC",
    "FieldConfig",
    "Scalar",
]
