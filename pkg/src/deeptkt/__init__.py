"""Artin transfer patterns of 3-groups of maximal class and their arithmetic realizations."""
from .errors import (CapacityError, ConsistencyError, ContractError, DomainError,
                     IdentificationError, ParameterError, StructureError)
from .finite import AbelianInvariants, FiniteGroup, Subgroup
from .pcgroup import GroupParams, PcGroup, admissible_params, build_group, collect
from .quadfield import FormClassGroup, class_group, is_fundamental, scan
from .symbolic import ArtinPattern, identify_tower_group, symbolic_pattern
from .tables import verify_tables
from .transfer import artin_pattern, artin_transfer, deep_tkt, shallow_tkt, verify_kernel_types, verify_theorem1
from .tree import build_tree, parent

__all__ = [
    "AbelianInvariants", "ArtinPattern", "CapacityError", "ConsistencyError", "ContractError",
    "DomainError", "FiniteGroup", "FormClassGroup", "GroupParams", "IdentificationError",
    "ParameterError", "PcGroup", "StructureError", "Subgroup", "admissible_params",
    "artin_pattern", "artin_transfer", "build_group", "build_tree", "class_group", "collect",
    "deep_tkt", "identify_tower_group", "is_fundamental", "parent", "scan", "shallow_tkt",
    "symbolic_pattern", "verify_kernel_types", "verify_tables", "verify_theorem1",
]
