"""Small dense-matrix helpers over exact commutative rings.

Matrices are lists of row lists. Entries may be ``int``, ``Fraction`` or
``LaurentPoly``; the ring is inferred from the entries.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly


def _exact_div(a, b):
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        return LaurentPoly.coerce(a).exact_div(LaurentPoly.coerce(b))
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 and isinstance(a, int) and isinstance(b, int) else q


def _is_zero(x) -> bool:
    if isinstance(x, LaurentPoly):
        return x.is_zero()
    return x == 0


def det(M, one=1):
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    n = len(M)
    if n == 0:
        return one
    A = [list(row) for row in M]
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(A[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(A[i][k]):
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return one * 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = _exact_div(akk * A[i][j] - aik * A[k][j], prev)
        prev = akk
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                acc = acc + row[k] * B[k][j]
            new.append(acc)
        out.append(new)
    return out


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def minor(M, i, j):
    return [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]


def adjugate(M, one=1):
    n = len(M)
    if n == 1:
        return [[one]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(minor(M, i, j), one)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def int_det(M) -> int:
    """Exact integer determinant."""
    d = det([[int(x) for x in row] for row in M])
    return int(d)
