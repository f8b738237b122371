"""Factorization of univariate polynomials over Q.

Square-free decomposition is done here (Yun's algorithm); each square-free
integer-primitive part is split into irreducibles by sympy's Zassenhaus
implementation.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..errors import CapabilityError
from .laurent import LaurentPoly, poly_gcd

__all__ = ["factor_over_Q", "squarefree_decomposition", "MAX_FACTOR_DEGREE"]

MAX_FACTOR_DEGREE = 64


def squarefree_decomposition(p: LaurentPoly) -> list[tuple[LaurentPoly, int]]:
    """Monic square-free, pairwise coprime a_i with p ~ prod a_i^i (Yun)."""
    p = p.normalized()
    if p.degree <= 0:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.pdivmod(a)[0]
    c = dp.pdivmod(a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a.normalized(), i))
        b = b.pdivmod(a)[0]
        c = d.pdivmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


_X = sympy.Symbol("x")


def _split_irreducible(f: LaurentPoly) -> list[LaurentPoly]:
    g = f.primitive_integer()
    expr = sum(int(v) * _X ** e for e, v in g.items())
    _, factors = sympy.factor_list(expr, _X, domain="ZZ")
    out = []
    for fac, mult in factors:
        coeffs = sympy.Poly(fac, _X).all_coeffs()[::-1]
        q = LaurentPoly.from_list([Fraction(int(c)) for c in coeffs]).normalized()
        if q.degree > 0:
            out.extend([q] * mult)
    return out


def factor_over_Q(p) -> list[tuple[LaurentPoly, int]]:
    """Irreducible monic factors of ``p`` over Q with multiplicities.

    A Laurent input is first made a polynomial with nonzero constant term
    (powers of t are units). The product of the factors equals ``p`` up to a
    unit c*t^k.
    """
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    p = p.normalized()
    if p.degree > MAX_FACTOR_DEGREE:
        raise CapabilityError(f"degree {p.degree} exceeds the factorization bound {MAX_FACTOR_DEGREE}")
    counts: dict[LaurentPoly, int] = {}
    for part, mult in squarefree_decomposition(p):
        for q in _split_irreducible(part):
            counts[q] = counts.get(q, 0) + mult
    return sorted(counts.items(), key=lambda fm: (fm[0].degree, fm[0].to_str()))


def monic_divisors(p) -> list[LaurentPoly]:
    """Every unit-normal divisor of ``p`` (from its factorization)."""
    factors = factor_over_Q(p)
    divs = [LaurentPoly.one()]
    for f, m in factors:
        divs = [d * f ** k for d in divs for k in range(m + 1)]
    return sorted({d.normalized() for d in divs}, key=lambda d: (d.degree, d.to_str()))
