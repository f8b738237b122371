"""Smith normal form over the principal ideal domain Q[t, t^-1]."""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly
from .matrices import identity

__all__ = ["SmithForm", "smith_normal_form"]

_ZERO = LaurentPoly.zero()
_ONE = LaurentPoly.one()


@dataclass(frozen=True)
class SmithForm:
    """``left * M * right == diag(diagonal)`` with invertible transforms.

    ``left_inverse`` is carried along so Smith coordinates can be mapped back
    to the original generators without a separate inversion.
    """

    diagonal: tuple
    left: tuple
    right: tuple
    left_inverse: tuple
    shape: tuple

    def diagonal_matrix(self):
        m, n = self.shape
        D = [[_ZERO] * n for _ in range(m)]
        for i, d in enumerate(self.diagonal):
            D[i][i] = d
        return D

    @property
    def nonunit_entries(self):
        return [d for d in self.diagonal if not d.is_unit()]


def _pick_pivot(A, k):
    best = None
    for i in range(k, len(A)):
        row = A[i]
        for j in range(k, len(row)):
            x = row[j]
            if x:
                key = (x.span, i, j)
                if best is None or key < best:
                    best = key
    return best


def smith_normal_form(M) -> SmithForm:
    """Smith normal form with the minimal-span pivot rule.

    Diagonal entries are unit-normal (leading coefficient 1, minimal exponent
    0) and satisfy d_i | d_{i+1}; zero entries come last.
    """
    A = [[LaurentPoly.coerce(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m, _ONE, _ZERO)
    Uinv = identity(m, _ONE, _ZERO)
    W = identity(n, _ONE, _ZERO)

    def row_axpy(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:  # inverse: column src -= q * column dst
            row[src] = row[src] - q * row[dst]

    def col_axpy(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] = row[dst] + q * row[src]
        for row in W:
            row[dst] = row[dst] + q * row[src]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in W:
                row[i], row[j] = row[j], row[i]

    for k in range(min(m, n)):
        while True:
            piv = _pick_pivot(A, k)
            if piv is None:
                break
            _, i, j = piv
            swap_rows(k, i)
            swap_cols(k, j)
            p = A[k][k]
            clean = True
            for i in range(k + 1, m):
                if A[i][k]:
                    q, r = A[i][k].divmod(p)
                    row_axpy(i, k, -q)
                    clean = clean and r.is_zero()
            for j in range(k + 1, n):
                if A[k][j]:
                    q, r = A[k][j].divmod(p)
                    col_axpy(j, k, -q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n)
                 if A[i][j] and not p.divides(A[i][j])),
                None,
            )
            if bad is None:
                break
            row_axpy(k, bad, _ONE)
        if _pick_pivot(A, k) is None:
            break

    diag = []
    for k in range(min(m, n)):
        d = A[k][k]
        if d:
            u = d.unit_part()
            uinv = u ** -1
            A[k] = [x * uinv for x in A[k]]
            U[k] = [x * uinv for x in U[k]]
            for row in Uinv:
                row[k] = row[k] * u
            d = A[k][k]
        diag.append(d)

    return SmithForm(
        diagonal=tuple(diag),
        left=tuple(tuple(r) for r in U),
        right=tuple(tuple(r) for r in W),
        left_inverse=tuple(tuple(r) for r in Uinv),
        shape=(m, n),
    )
