"""Finite crossed modules, cat1-groups, actions, derived modules and the Hopf certificate."""
from .errors import (
    ArgumentError,
    AxiomError,
    CrossmodError,
    HypothesisError,
    InvariantViolation,
    ParseError,
    SizeLimitError,
)
from .groups import FiniteGroup, GroupHom, abelian_group, group_from_permutations, make_hom
from .xmod import CrossedModule, make_crossed_module
from .cat1 import Cat1Group, cat1_to_cm, cm_to_cat1, make_cat1
from .certifier import certify_nonbalanced, hopf_pipeline, schur_multiplier_abelian
from .lattice import IntMatrix, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "ArgumentError", "AxiomError", "CrossmodError", "HypothesisError", "InvariantViolation",
    "ParseError", "SizeLimitError",
    "FiniteGroup", "GroupHom", "abelian_group", "group_from_permutations", "make_hom",
    "CrossedModule", "make_crossed_module",
    "Cat1Group", "cat1_to_cm", "cm_to_cat1", "make_cat1",
    "certify_nonbalanced", "hopf_pipeline", "schur_multiplier_abelian",
    "IntMatrix", "smith_normal_form",
]
