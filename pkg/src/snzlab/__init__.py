"""Exact construction and verification of strictly nonzero integer charges
on the clopen algebra of Cantor space."""

from .charge import (
    Explicit,
    GreedyMinimal,
    GrowthSpec,
    WeightVector,
    charge_of,
    check_growth,
    greedy_extend,
    h,
    weight_vector,
)
from .clopen import EMPTY, FULL, ClopenSet, Cylinder, FinPermutation
from .lang import evaluate, format_set, parse, parse_set
from .verifier import verify_level, verify_range

__version__ = "0.1.0"

__all__ = [
    "Explicit", "GreedyMinimal", "GrowthSpec", "WeightVector", "charge_of",
    "check_growth", "greedy_extend", "h", "weight_vector",
    "EMPTY", "FULL", "ClopenSet", "Cylinder", "FinPermutation",
    "evaluate", "format_set", "parse", "parse_set",
    "verify_level", "verify_range",
]
