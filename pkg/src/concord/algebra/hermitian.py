"""Exact characteristic polynomials of the Levine-Tristram Hermitian matrix.

For a Seifert matrix V and omega = exp(i*theta) on the upper semicircle we
parametrize by c = 2cos(theta) and split H(omega) = (1-omega)V + (1-conj(omega))V^T
into A + iB with

    A = (1 - cos theta)(V + V^T),   B = sin(theta)(V^T - V).

The real 2n x 2n matrix [[A, -B], [B, A]] has characteristic polynomial
char(H)^2 and only even powers of sin(theta) survive, so everything lives in
Q once sin^2 = 1 - cos^2 is substituted.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .laurent import LaurentPoly

__all__ = ["hermitian_char_poly", "signature_from_charpoly", "poly_sqrt"]


def _charpoly_faddeev(M, r):
    """Coefficients [c_0, ..., c_n] (c_n = 1) of det(xI - M) over Z[sqrt r].

    Entries of ``M`` are integer pairs (a, b) meaning a + b*sqrt(r). The
    Faddeev-LeVerrier divisions by k are exact in Z[sqrt r] because the
    characteristic polynomial of such a matrix has coefficients there.
    """
    n = len(M)
    coeffs = [(0, 0)] * (n + 1)
    coeffs[n] = (1, 0)
    nz = [[(l, M[i][l]) for l in range(n) if M[i][l] != (0, 0)] for i in range(n)]
    Mk = [[(0, 0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- M * M_{k-1} + c_{n-k+1} I
        prod = []
        for i in range(n):
            ra = [0] * n
            rb = [0] * n
            for l, (xa, xb) in nz[i]:
                for j, (ya, yb) in enumerate(Mk[l]):
                    if ya or yb:
                        ra[j] += xa * ya + r * xb * yb
                        rb[j] += xa * yb + xb * ya
            prod.append([ra, rb])
        ca, cb = coeffs[n - k + 1]
        Mk = []
        for i, (ra, rb) in enumerate(prod):
            ra[i] += ca
            rb[i] += cb
            Mk.append(list(zip(ra, rb)))
        ta = tb = 0
        for i in range(n):
            for l, (xa, xb) in nz[i]:
                ya, yb = Mk[l][i]
                ta += xa * ya + r * xb * yb
                tb += xa * yb + xb * ya
        assert ta % k == 0 and tb % k == 0, "inexact Faddeev division"
        coeffs[n - k] = (-ta // k, -tb // k)
    return coeffs


def poly_sqrt(p: LaurentPoly) -> LaurentPoly:
    """Exact square root of a monic even-degree polynomial that is a perfect square."""
    n2 = p.degree
    assert n2 % 2 == 0 and p.leading == 1, "not a monic square"
    n = n2 // 2
    q = {n: Fraction(1)}
    for k in range(1, n + 1):
        # coefficient of x^(2n-k) in q^2 determines q_{n-k}
        target = p[n2 - k]
        acc = Fraction(0)
        for i in range(n - k + 1, n):
            j = n2 - k - i
            if n - k < j <= n:
                acc += q.get(i, 0) * q.get(j, 0)
        q[n - k] = (target - acc) / 2
    root = LaurentPoly(q)
    assert root * root == p, "polynomial square root failed"
    return root


def hermitian_char_poly(V, c) -> LaurentPoly:
    """det(lambda I - H) for H = (1-omega)V + (1-conj omega)V^T, 2cos(theta) = c."""
    c = Fraction(c)
    if abs(c) > 2:
        raise DomainError(f"c = {c} lies outside [-2, 2]")
    n = len(V)
    if n == 0:
        return LaurentPoly.one()
    # work with the integer matrix 2q*H where c = p/q; then sin^2 = (4q^2 - p^2)/(4q^2)
    p, q = c.numerator, c.denominator
    r = 4 * q * q - p * p
    a_scale = 2 * q - p
    M = [[(0, 0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a = a_scale * (V[i][j] + V[j][i])
            b = V[j][i] - V[i][j]
            M[i][j] = M[n + i][n + j] = (a, 0)
            M[i][n + j] = (0, -b)
            M[n + i][j] = (0, b)
    coeffs = _charpoly_faddeev(M, r)
    for _, b in coeffs:
        assert b == 0, "odd power of sin(theta) survived"
    root = poly_sqrt(LaurentPoly({k: a for k, (a, _) in enumerate(coeffs)}))
    # undo the scaling: char_H(lambda) = (2q)^-n char_{2qH}(2q lambda)
    return LaurentPoly({k: v * Fraction(2 * q) ** (k - n) for k, v in root.items()})


def _sign_variations(values) -> int:
    signs = [v > 0 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature_from_charpoly(p: LaurentPoly) -> int:
    """#positive roots - #negative roots (with multiplicity) of a real-rooted polynomial.

    Exact by Descartes' rule of signs, which counts exactly when all roots are
    real. Real-rootedness is assumed, not checked.
    """
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        raise ValueError("zero polynomial")
    p = p.shift(-p.min_exp)
    coeffs = [p[e] for e in range(p.degree + 1)]
    pos = _sign_variations(coeffs)
    neg = _sign_variations([v if e % 2 == 0 else -v for e, v in enumerate(coeffs)])
    return pos - neg
