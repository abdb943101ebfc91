"""Exact group-theoretic toolkit for Galois covers of curves and their Jacobians.

Finite permutation groups, permutation modules and their homomorphisms,
character tables over cyclotomic fields, equivariant Riemann-Hurwitz,
isogeny criteria, Brauer relations and descent bookkeeping.
"""

__version__ = "0.1.0"

from .chars import (
    CharacterTable,
    ClassFunction,
    VirtualCharacter,
    brauer_relations,
    character_table,
    decompose,
    induce_trivial,
    inner_product,
)
from .descent import RankObservation, rank_solver, selmer_decomposition, self_duality_check, vanishing_constraints
from .errors import ConfigError, GCKError
from .group_core import DoubleCoset, Group, Perm, Subgroup, double_cosets, group_from_generators
from .gset import GSet, g_closure, gset_from_stabilizers, sn_closure
from .isogeny import dual_expression, f_phi_expression, isogeny_criterion, simplify_expression
from .named import group_by_name
from .permmod import PermModuleHom, compose, dual_hom, hom_basis, hom_from_images, hom_from_matrix
from .rh import CoverData, component_genus, equivariant_rh, rh_consistency
from .sha_parity import LocalDeficiencyData, SquareClass, mu_place, sha_two_class

__all__ = [
    "CharacterTable", "ClassFunction", "ConfigError", "CoverData", "DoubleCoset", "GCKError", "GSet",
    "Group", "LocalDeficiencyData", "Perm", "PermModuleHom", "RankObservation", "SquareClass",
    "Subgroup", "VirtualCharacter", "brauer_relations", "character_table", "component_genus",
    "compose", "decompose", "double_cosets", "dual_expression", "dual_hom", "equivariant_rh",
    "f_phi_expression", "g_closure", "group_by_name", "group_from_generators", "gset_from_stabilizers",
    "hom_basis", "hom_from_images", "hom_from_matrix", "induce_trivial", "inner_product",
    "isogeny_criterion", "mu_place", "rank_solver", "rh_consistency", "selmer_decomposition",
    "self_duality_check", "sha_two_class", "simplify_expression", "sn_closure", "vanishing_constraints",
]
