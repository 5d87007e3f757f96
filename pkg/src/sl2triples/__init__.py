"""Exact construction and brute-force verification of sl2-triples in the Lie
algebras of GL, SL, Sp, O and SO over GF(p)."""

from .kernels import BACKEND
from .gfp import FieldMatrix
from .partitions import GroupKind, OrbitLabel, Partition, VarietyKind

__version__ = "0.1.0"

__all__ = ["BACKEND", "FieldMatrix", "GroupKind", "OrbitLabel", "Partition", "VarietyKind", "__version__"]
