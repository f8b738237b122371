"""Exact arithmetic: Laurent polynomials, root isolation, Smith forms, factoring."""

from .factor import factor_over_Q, monic_divisors, squarefree_decomposition
from .hermitian import hermitian_char_poly, poly_sqrt, signature_from_charpoly
from .laurent import T, LaurentPoly, RationalFunction, extended_gcd, poly_gcd, poly_lcm, residue_mod
from .roots import AlgebraicNumber, sturm_isolate
from .smith import SmithForm, smith_normal_form

__all__ = [
    "AlgebraicNumber",
    "LaurentPoly",
    "RationalFunction",
    "SmithForm",
    "T",
    "extended_gcd",
    "factor_over_Q",
    "hermitian_char_poly",
    "monic_divisors",
    "poly_gcd",
    "poly_lcm",
    "poly_sqrt",
    "residue_mod",
    "signature_from_charpoly",
    "smith_normal_form",
    "squarefree_decomposition",
    "sturm_isolate",
]
