"""Seifert matrices and the classical invariants computed from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .algebra.factor import factor_over_Q
from .algebra.laurent import LaurentPoly
from .algebra.matrices import det, int_det
from .errors import CapabilityError, InvalidSeifertMatrix

__all__ = [
    "SeifertMatrix",
    "MetabolizerReport",
    "SlicenessResult",
    "alexander_polynomial",
    "arf",
    "connected_sum",
    "mirror",
    "genus1_metabolizers",
    "is_algebraically_slice",
    "fox_milnor_factor",
    "random_seifert_matrix",
]

_T = LaurentPoly.monomial(1, 1)


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer matrix V of even size with det(V - V^T) = 1."""

    entries: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidSeifertMatrix("Seifert matrix must be square")
        if n % 2:
            raise InvalidSeifertMatrix(f"Seifert matrix must have even size, got {n}")
        if n and int_det([[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]) != 1:
            raise InvalidSeifertMatrix("det(V - V^T) must equal 1")

    @classmethod
    def of(cls, V, label=None) -> "SeifertMatrix":
        if isinstance(V, SeifertMatrix):
            return V
        return cls(tuple(tuple(r) for r in V), label)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> list[list[int]]:
        return [list(c) for c in zip(*self.entries)]

    def form(self, v, w) -> int:
        """v^T V w."""
        return sum(v[i] * self.entries[i][j] * w[j] for i in range(self.size) for j in range(self.size))

    def __str__(self):
        return self.label or str([list(r) for r in self.entries])


UNKNOT = SeifertMatrix((), "unknot")


def alexander_polynomial(V) -> LaurentPoly:
    """det(V - t V^T), normalized so the minimal exponent is 0 and Delta(1) = 1."""
    V = SeifertMatrix.of(V)
    if V.size == 0:
        return LaurentPoly.one()
    Vt = V.transpose()
    M = [[LaurentPoly.const(V.entries[i][j]) - _T.scale(Vt[i][j]) for j in range(V.size)]
         for i in range(V.size)]
    d = det(M, LaurentPoly.one())
    d = d.shift(-d.min_exp)
    return d.scale(1 / d(1))


def arf(V) -> int:
    """Arf invariant of q(v) = v^T V v mod 2, by counting zeros of q."""
    V = SeifertMatrix.of(V)
    n = V.size
    if n == 0:
        return 0
    if n > 20:
        raise CapabilityError("Arf by counting is limited to genus 10")
    A = np.array(V.entries, dtype=np.int64) % 2
    vecs = np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64)
    q = np.einsum("ki,ij,kj->k", vecs, A, vecs) % 2
    zeros = int(np.count_nonzero(q == 0))
    return 0 if 2 * zeros > len(vecs) else 1


def connected_sum(V1, V2) -> SeifertMatrix:
    V1, V2 = SeifertMatrix.of(V1), SeifertMatrix.of(V2)
    n1, n2 = V1.size, V2.size
    rows = [list(r) + [0] * n2 for r in V1.entries] + [[0] * n1 + list(r) for r in V2.entries]
    label = None
    if V1.label and V2.label:
        label = f"{V1.label} # {V2.label}"
    return SeifertMatrix(tuple(map(tuple, rows)), label)


def mirror(V) -> SeifertMatrix:
    V = SeifertMatrix.of(V)
    rows = tuple(tuple(-x for x in col) for col in zip(*V.entries)) if V.size else ()
    label = f"mirror({V.label})" if V.label else None
    return SeifertMatrix(rows, label)


# -- metabolizers -------------------------------------------------------------

def _primitive(v) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    v = tuple(int(x) // g for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass(frozen=True)
class MetabolizerReport:
    """Isotropic lines of a genus-one Seifert form.

    ``kind`` is "none", "lines" or "all"; ``lines`` holds primitive integer
    vectors up to sign.
    """

    kind: str
    lines: tuple
    matrix: tuple
    discriminant: int | None = None


def genus1_metabolizers(V) -> MetabolizerReport:
    """Rational isotropic lines of q(v) = v^T V v for a 2x2 integer matrix.

    The matrix is not required to be a valid Seifert matrix, so degenerate
    forms (q identically zero) are accepted.
    """
    rows = V.entries if isinstance(V, SeifertMatrix) else tuple(tuple(int(x) for x in r) for r in V)
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise CapabilityError("genus1_metabolizers needs a 2x2 matrix; use is_algebraically_slice for higher genus")
    (a, b), (c, d) = rows
    m = b + c
    if a == 0 and m == 0 and d == 0:
        return MetabolizerReport("all", (), rows, 0)
    disc = m * m - 4 * a * d
    lines = set()
    if a == 0:
        # q = v2 (m v1 + d v2)
        lines.add((1, 0))
        lines.add(_primitive((d, -m)))
    elif disc >= 0 and isqrt(disc) ** 2 == disc:
        r = isqrt(disc)
        for s in (r, -r):
            x = Fraction(-m + s, 2 * a)
            lines.add(_primitive((x.numerator, x.denominator)))
    if not lines:
        return MetabolizerReport("none", (), rows, disc)
    return MetabolizerReport("lines", tuple(sorted(lines, reverse=True)), rows, disc)


@dataclass(frozen=True)
class SlicenessResult:
    """Outcome of the algebraic sliceness test.

    ``kind`` is "yes" (``witness`` spans a metabolizer), "no" (``certificate``
    explains why none exists) or "unknown".
    """

    kind: str
    witness: tuple = ()
    certificate: dict | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.witness:
            out["witness"] = [list(v) for v in self.witness]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.note:
            out["note"] = self.note
        return out


def fox_milnor_factor(delta: LaurentPoly) -> LaurentPoly | None:
    """Some f with f(t) f(t^-1) equal to ``delta`` up to units, or None.

    Irreducible factors p with p(t^-1) not associate to p pair off with their
    reflections automatically for a symmetric delta; the self-reciprocal ones
    need even multiplicity.
    """
    delta = LaurentPoly.coerce(delta)
    factors = dict(factor_over_Q(delta))
    f = LaurentPoly.one()
    seen = set()
    for p, m in factors.items():
        if p in seen:
            continue
        pb = p.bar().normalized()
        if pb == p:
            if m % 2:
                return None
            f = f * p ** (m // 2)
            seen.add(p)
        else:
            if factors.get(pb, 0) != m:
                return None
            f = f * p ** m
            seen.update((p, pb))
    if not (f * f.bar()).associated(delta):
        return None
    return f


def _isotropic_vectors(V: SeifertMatrix, bound: int) -> np.ndarray:
    n = V.size
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.stack(np.meshgrid(*([rng] * n), indexing="ij"), axis=-1).reshape(-1, n)
    A = np.array(V.entries, dtype=np.int64)
    q = np.einsum("ki,ij,kj->k", grids, A, grids)
    cand = grids[q == 0]
    # primitive, first nonzero coordinate positive
    g = np.gcd.reduce(np.abs(cand), axis=1)
    cand = cand[g == 1]
    first = np.array([row[np.flatnonzero(row)[0]] for row in cand]) if len(cand) else np.zeros(0)
    return cand[first > 0]


def _search_metabolizer(V: SeifertMatrix, bound: int):
    g = V.genus
    vecs = _isotropic_vectors(V, bound)
    if len(vecs) < g:
        return None
    A = np.array(V.entries, dtype=np.int64)
    P = vecs @ A @ vecs.T
    ok = (P == 0) & (P.T == 0)

    def extend(chosen, start):
        if len(chosen) == g:
            return chosen
        for k in range(start, len(vecs)):
            if all(ok[k, j] for j in chosen):
                trial = chosen + [k]
                if np.linalg.matrix_rank(vecs[trial].astype(float)) == len(trial):
                    found = extend(trial, k + 1)
                    if found:
                        return found
        return None

    idx = extend([], 0)
    return None if idx is None else tuple(tuple(int(x) for x in vecs[k]) for k in idx)


_SEARCH_BUDGET = 3_000_000


def is_algebraically_slice(V, bound: int = 10) -> SlicenessResult:
    """Decide (genus <= 1) or semi-decide (genus >= 2) algebraic sliceness."""
    from .signature import signature_function

    V = SeifertMatrix.of(V)
    if V.size == 0:
        return SlicenessResult("yes")
    sf = signature_function(V)
    if sf.value_at_minus_one:
        return SlicenessResult("no", certificate={
            "type": "signature", "x": "-2", "sigma": sf.value_at_minus_one})
    for k, s in enumerate(sf.plateaus):
        if s:
            return SlicenessResult("no", certificate={
                "type": "signature", "x": str(sf.sample_points[k]), "sigma": s})
    delta = alexander_polynomial(V)
    if fox_milnor_factor(delta) is None:
        return SlicenessResult("no", certificate={
            "type": "fox-milnor", "alexander": delta.to_str()})
    if V.genus == 1:
        rep = genus1_metabolizers(V)
        if rep.kind == "none":
            return SlicenessResult("no", certificate={
                "type": "no-isotropic-line", "discriminant": rep.discriminant})
        return SlicenessResult("yes", witness=(rep.lines[0],))
    searched = 0
    for b in range(1, bound + 1):
        if (2 * b + 1) ** V.size > _SEARCH_BUDGET:
            break
        found = _search_metabolizer(V, b)
        searched = b
        if found:
            return SlicenessResult("yes", witness=found)
    return SlicenessResult("unknown", note=f"no metabolizer with coordinates bounded by {searched}")


def random_seifert_matrix(rng, genus: int, low: int = -3, high: int = 3) -> SeifertMatrix:
    """Rejection sample: uniform entries in [low, high] until det(V - V^T) = 1.

    ``rng`` is a ``random.Random`` (or anything with ``randint``).
    """
    n = 2 * genus
    while True:
        rows = [[rng.randint(low, high) for _ in range(n)] for _ in range(n)]
        if n == 0 or int_det([[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]) == 1:
            return SeifertMatrix(tuple(map(tuple, rows)))
