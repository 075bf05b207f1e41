"""Exact arithmetic over Q: polynomials, gcds, resultants, factorization."""

from fractions import Fraction

from .factor import Factorization, cyclotomic, eisenstein, factor_rational
from .numberfield import NumberField
from .poly import (
    HOMOGENEOUS,
    UNIVARIATE,
    BigRat,
    Poly,
    divrem,
    max_multiplicity,
    poly_arith,
    poly_gcd,
    resultant,
    squarefree_part,
    univariate_resultant,
)

__all__ = [
    "BigRat",
    "Factorization",
    "Fraction",
    "HOMOGENEOUS",
    "NumberField",
    "Poly",
    "UNIVARIATE",
    "cyclotomic",
    "divrem",
    "eisenstein",
    "factor_rational",
    "max_multiplicity",
    "poly_arith",
    "poly_gcd",
    "resultant",
    "squarefree_part",
    "univariate_resultant",
]
