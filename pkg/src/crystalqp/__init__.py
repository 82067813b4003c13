"""Crystal structures on tropical points of cluster varieties."""

from .quiver import Seed, SeedGraph, canonical_form, delete_frozen_arrows, mutate_seed
from .tropical import (Budget, TropTriple, complete_triple, e_pair, hom_pair,
                       mutate_apoint, mutate_delta, mutate_triple, tau_delta)
from .crystal import CrystalStructure, TropPoint, crystal_graph, verify_axioms
from .laurent import ClusterState, LaurentPoly, generic_character, mutate_state

__all__ = [
    "Seed", "SeedGraph", "canonical_form", "delete_frozen_arrows", "mutate_seed",
    "Budget", "TropTriple", "complete_triple", "e_pair", "hom_pair",
    "mutate_apoint", "mutate_delta", "mutate_triple", "tau_delta",
    "CrystalStructure", "TropPoint", "crystal_graph", "verify_axioms",
    "ClusterState", "LaurentPoly", "generic_character", "mutate_state",
]

__version__ = "0.1.0"
