"""Certified real-root isolation with Sturm sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from .laurent import LaurentPoly, poly_gcd

__all__ = ["AlgebraicNumber", "sturm_chain", "sturm_isolate", "squarefree_part", "count_roots"]


def _check_poly(p: LaurentPoly) -> LaurentPoly:
    p = LaurentPoly.coerce(p)
    if not p.is_polynomial():
        raise ValueError("expected an ordinary polynomial (no negative exponents)")
    return p


def squarefree_part(p: LaurentPoly) -> LaurentPoly:
    p = _check_poly(p)
    if p.degree <= 0:
        return p.normalized() if p else p
    g = poly_gcd(p, p.derivative())
    return p.pdivmod(g)[0].normalized()


def sturm_chain(p: LaurentPoly) -> list[LaurentPoly]:
    chain = [p, p.derivative()]
    while chain[-1]:
        r = chain[-2].pdivmod(chain[-1])[1]
        if not r:
            break
        chain.append(-r)
    return [q for q in chain if q]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(chain, x) -> int:
    signs = [s for s in (_sign(q(x)) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain, a: Fraction, b: Fraction) -> int:
    """Distinct roots in (a, b] of the square-free chain head; a must not be a root."""
    return _variations(chain, a) - _variations(chain, b)


def _split_point(f, a, b):
    mid = (a + b) / 2
    k = 3
    while f(mid) == 0:
        mid = a + (b - a) / k
        k += 1
    return mid


def sturm_isolate(p, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct real roots of ``p`` inside (lo, hi).

    Intervals are returned left to right, are pairwise disjoint, contain exactly
    one root each, and have rational endpoints that are not roots of ``p``.
    """
    p = _check_poly(p)
    if p.is_zero():
        raise ValueError("indeterminate root set")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.degree <= 0:
        return []
    f = squarefree_part(p)
    x = LaurentPoly.monomial(1, 1)
    # roots at the endpoints are excluded from the open interval; divide them out
    for end in (lo, hi):
        if f(end) == 0:
            f = f.pdivmod(x - end)[0]
    if f.degree <= 0:
        return []
    chain = sturm_chain(f)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(chain, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = _split_point(f, a, b)
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number given by a square-free polynomial and an
    isolating interval (lo, hi) containing exactly one of its roots."""

    poly: LaurentPoly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        f = self.poly
        if f(self.lo) == 0 or f(self.hi) == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        if count_roots(sturm_chain(f), self.lo, self.hi) != 1:
            raise ValueError("interval does not isolate exactly one root")

    @classmethod
    def isolate_all(cls, p, lo, hi) -> list["AlgebraicNumber"]:
        f = squarefree_part(_check_poly(p))
        return [cls(f, a, b) for a, b in sturm_isolate(f, lo, hi)]

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def bisect(self) -> "AlgebraicNumber":
        f = self.poly
        a, b = self.lo, self.hi
        m = _split_point(f, a, b)
        if _sign(f(a)) != _sign(f(m)):
            return AlgebraicNumber(f, a, m)
        return AlgebraicNumber(f, m, b)

    def refined(self, width) -> "AlgebraicNumber":
        """Nested isolating interval of width at most ``width``."""
        width = Fraction(width)
        r = self
        f = self.poly
        a, b = r.lo, r.hi
        sa = _sign(f(a))
        while b - a > width:
            m = _split_point(f, a, b)
            if _sign(f(m)) == sa:
                a = m
            else:
                b = m
        return AlgebraicNumber(f, a, b) if (a, b) != (r.lo, r.hi) else r

    def equals_rational(self, q) -> bool:
        q = Fraction(q)
        return self.lo < q < self.hi and self.poly(q) == 0

    def rational_value(self, candidates) -> Fraction | None:
        for q in candidates:
            if self.equals_rational(q):
                return Fraction(q)
        return None

    def interval(self):
        """The isolating interval as an mpmath interval (current iv precision)."""
        return iv.mpf([_to_iv_lo(self.lo), _to_iv_hi(self.hi)])

    def __str__(self):
        return f"root of {self.poly.to_str('x')} in ({self.lo}, {self.hi})"


def _to_iv_lo(q: Fraction):
    return (iv.mpf(q.numerator) / q.denominator).a


def _to_iv_hi(q: Fraction):
    return (iv.mpf(q.numerator) / q.denominator).b
