"""Exact ideal colourings of the cyclotomic integers Z[xi_n] with class number one."""

from .core import (
    CLASS_NUMBER_ONE,
    CycloElem,
    ElementSyntaxError,
    FieldContext,
    InvalidFieldError,
    build_field,
    conjugate,
    format_element,
    galois,
    parse_element,
)
from .ideals import IdealSpec, divides, ideal_equal, is_balanced, is_unit, norm, ramified_generator
from .series import DirichletCoeffs, dirichlet_coefficients, table_row, verify_table_h
from .splitting import (
    GeneratorCache,
    GeneratorNotFoundError,
    RationalPrimeSplit,
    SearchBudget,
    find_prime_generator,
    split_prime,
)
from .symmetry import (
    BudgetExceededError,
    ColouringAtlas,
    HKind,
    PointGroupDescriptor,
    PointOp,
    SymmetryReport,
    classify_H,
    enumerate_colourings,
    is_perfect_index,
    perfect_generator,
    point_group_K,
    symmetry_report,
    verify_table_K,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "CLASS_NUMBER_ONE", "ColouringAtlas", "CycloElem", "DirichletCoeffs",
    "ElementSyntaxError", "FieldContext", "GeneratorCache", "GeneratorNotFoundError", "HKind",
    "IdealSpec", "InvalidFieldError", "PointGroupDescriptor", "PointOp", "RationalPrimeSplit",
    "SearchBudget", "SymmetryReport", "build_field", "classify_H", "conjugate", "dirichlet_coefficients",
    "divides", "enumerate_colourings", "find_prime_generator", "format_element", "galois",
    "ideal_equal", "is_balanced", "is_perfect_index", "is_unit", "norm", "parse_element",
    "perfect_generator", "point_group_K", "ramified_generator", "split_prime", "symmetry_report",
    "table_row", "verify_table_K", "verify_table_h",
]
