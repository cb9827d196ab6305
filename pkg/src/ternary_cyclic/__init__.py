"""Ternary cyclic codes over GF(3^m): construction and distance verification."""

from .polyf3 import Factorization, TritPoly, factor, format_poly, is_irreducible, parse_poly
from .field import FieldCtx, FieldElem, ctx_default, ctx_new, parse_field_spec
from .cosets import coset, coset_leaders, coset_size_predicted, same_coset
from .codes import CyclicCode, build_code, minimal_poly
from .distance import (
    BoundReport,
    WeightWitness,
    exact_min_distance,
    find_low_weight,
    optimality_bound,
)

__all__ = [
    "BoundReport",
    "CyclicCode",
    "Factorization",
    "FieldCtx",
    "FieldElem",
    "TritPoly",
    "WeightWitness",
    "build_code",
    "coset",
    "coset_leaders",
    "coset_size_predicted",
    "ctx_default",
    "ctx_new",
    "exact_min_distance",
    "factor",
    "find_low_weight",
    "format_poly",
    "is_irreducible",
    "minimal_poly",
    "optimality_bound",
    "parse_field_spec",
    "parse_poly",
    "same_coset",
]

__version__ = "0.1.0"
