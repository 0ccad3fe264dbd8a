"""Presentations of the classified families and their regular permutation realizations."""

from .coset import CosetLimitError, enumerate_cosets
from .families import (
    FAMILIES,
    FamilyDef,
    FamilySpec,
    ParameterRangeError,
    Presentation,
    build_presentation,
    family_def,
    family_indices,
    in_range,
    printed_presentation,
    validate,
)
from .permgroup import (
    ClaimReport,
    PermGroup,
    PresentationError,
    center,
    closure,
    direct_product_check,
    element_order,
    exponent,
    is_normal,
    metacyclic_check,
    order_spectrum,
    realize,
    subgroup_props,
    verify_family_claims,
)

__all__ = [
    "FAMILIES", "FamilyDef", "FamilySpec", "ParameterRangeError", "Presentation",
    "build_presentation", "family_def", "family_indices", "in_range", "printed_presentation",
    "validate", "CosetLimitError", "enumerate_cosets", "ClaimReport", "PermGroup",
    "PresentationError", "center", "closure", "direct_product_check", "element_order",
    "exponent", "is_normal", "metacyclic_check", "order_spectrum", "realize",
    "subgroup_props", "verify_family_claims",
]
