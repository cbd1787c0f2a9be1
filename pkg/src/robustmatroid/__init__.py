"""Robust subsets of transversal matroids, with exhaustive cross-checks."""

from .graph import BipartiteGraph, bits, members
from .matroid import IndependenceOracle
from .robust import RobustWitness, check_witness, construct_witness, robust_bruteforce
from .tau import TauReport, tau_exact, verify_theorem
from .transversal import build_lifted, optimal_base_lifted, transversal_oracle

__all__ = [
    "BipartiteGraph",
    "IndependenceOracle",
    "RobustWitness",
    "TauReport",
    "bits",
    "build_lifted",
    "check_witness",
    "construct_witness",
    "members",
    "optimal_base_lifted",
    "robust_bruteforce",
    "tau_exact",
    "transversal_oracle",
    "verify_theorem",
]
