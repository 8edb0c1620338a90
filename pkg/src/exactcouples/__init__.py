"""Exact couples in semiabelian categories, computed exactly over Q."""

from .category import (
    Morphism,
    factorize,
    image,
    is_semistable_cokernel,
    is_semistable_kernel,
    is_strict,
    mediate_pullback,
    mediate_pushout,
    quotient_equal,
    subobject_equal,
)
from .couple import (
    CoupleTree,
    DerivedCouple,
    ExactCouple,
    cohomology,
    check_cohomology_identification,
    decompose_strict_alpha,
    derive,
    iterate,
    omega,
    validate_couple,
)
from .filt import FILT, FiltObject
from .linalg import Matrix, Subspace
from .vect import VECT, VectObject

__all__ = [
    "CoupleTree",
    "DerivedCouple",
    "ExactCouple",
    "FILT",
    "FiltObject",
    "Matrix",
    "Morphism",
    "Subspace",
    "VECT",
    "VectObject",
    "cohomology",
    "check_cohomology_identification",
    "decompose_strict_alpha",
    "derive",
    "factorize",
    "image",
    "is_semistable_cokernel",
    "is_semistable_kernel",
    "is_strict",
    "iterate",
    "mediate_pullback",
    "mediate_pushout",
    "omega",
    "quotient_equal",
    "subobject_equal",
    "validate_couple",
]

__version__ = "0.1.0"
