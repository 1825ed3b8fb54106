"""Canonical bases of mixed tensor products of natural and dual-natural U_q(sl_infinity)-modules."""

from .canonical import Budget, CanonicalCache, canonical_basis, kl_poly, multiplicity, select_j, x_monomial
from .errors import BudgetExceeded, InvalidInput
from .laurent import LaurentPoly
from .tensor import TensorVector, apply_monomial, e_act, f_act, specialize_one, weight_of

__all__ = [
    "Budget",
    "BudgetExceeded",
    "CanonicalCache",
    "InvalidInput",
    "LaurentPoly",
    "TensorVector",
    "apply_monomial",
    "canonical_basis",
    "e_act",
    "f_act",
    "kl_poly",
    "multiplicity",
    "select_j",
    "specialize_one",
    "weight_of",
    "x_monomial",
]
