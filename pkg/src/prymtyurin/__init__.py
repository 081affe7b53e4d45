"""Exact Prym-Tyurin presentations from finite group data."""

__version__ = "0.1.0"

from .constructions import (
    Family,
    FamilySpec,
    closed_form_expectation,
    family_presentation,
    jacobian_presentation,
    lemma_coefficient_identity,
    plain_product_presentation,
    product_presentation,
    reproduce_paper_table,
    single_presentation,
)
from .permgrp import (
    PermGroup,
    Permutation,
    Subgroup,
    generate_group,
    parse_cycles,
    point_stabilizer,
    simultaneous_coset_reps,
)
from .prym import (
    GeometricSignature,
    PresentationInput,
    PrymReport,
    correspondence_coefficients,
    criterion_residual,
    galois_cover_genus,
    hecke_matrix,
    isotypic_condition,
    projector_identity_check,
    prym_dimension,
    quotient_genus_x,
    run_presentation,
)
from .reptheory import ClassFunction, character_of, induced_trivial_character
from .scenario import emit_scenario, family_document, load_scenario, parse_scenario

__all__ = [
    "ClassFunction",
    "Family",
    "FamilySpec",
    "GeometricSignature",
    "PermGroup",
    "Permutation",
    "PresentationInput",
    "PrymReport",
    "Subgroup",
    "character_of",
    "closed_form_expectation",
    "correspondence_coefficients",
    "criterion_residual",
    "emit_scenario",
    "family_document",
    "family_presentation",
    "galois_cover_genus",
    "generate_group",
    "hecke_matrix",
    "induced_trivial_character",
    "isotypic_condition",
    "jacobian_presentation",
    "lemma_coefficient_identity",
    "load_scenario",
    "parse_cycles",
    "parse_scenario",
    "plain_product_presentation",
    "point_stabilizer",
    "product_presentation",
    "projector_identity_check",
    "prym_dimension",
    "quotient_genus_x",
    "reproduce_paper_table",
    "run_presentation",
    "simultaneous_coset_reps",
    "single_presentation",
]
