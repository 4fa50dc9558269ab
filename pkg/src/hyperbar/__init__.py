"""Persistent embedded homology and Ĥ barcodes of hypergraph filtrations."""

from .engine import Bar, compute_barcodes
from .filtration import INF, Filtration, Grade
from .hypergraph import Hypergraph

__all__ = ["Bar", "Filtration", "Grade", "Hypergraph", "INF", "compute_barcodes"]
__version__ = "0.1.0"
