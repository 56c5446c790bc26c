"""Exact divisibility invariants of finite group pairs, class-group rank
bound evaluators, and the supporting integer censuses."""

__version__ = "0.1.0"

from .divisibility import (GroupPair, DivisibilityReport, decide, delta_exact,
                           big_delta_exact, scan_all_primes, theorem_bounds,
                           weak_constraints, strong_constraints,
                           covers_weak, covers_strong, semidirect_hypothesis)
from .perm import Permutation, PermGroup, element_order
from .lattice import all_subgroups, intermediate_subgroups, subgroup_conjugacy_classes

__all__ = [
    "__version__",
    "Permutation", "PermGroup", "element_order",
    "GroupPair", "DivisibilityReport",
    "decide", "delta_exact", "big_delta_exact", "scan_all_primes",
    "theorem_bounds", "weak_constraints", "strong_constraints",
    "covers_weak", "covers_strong", "semidirect_hypothesis",
    "all_subgroups", "intermediate_subgroups", "subgroup_conjugacy_classes",
]
