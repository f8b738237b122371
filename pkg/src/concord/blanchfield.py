"""The rational Alexander module and its classical Blanchfield pairing.

The module is the cokernel of P = tV - V^T acting on column vectors over
Q[t, t^-1]. The pairing is

    Bl(x, y) = (1 - t) * conj(x)^T P^-1 y   in Q(t)/Q[t, t^-1],

with conj the involution t -> t^-1 applied to coordinates. It is well defined
because conj(P)^T = -t^-1 P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .algebra.factor import monic_divisors
from .algebra.laurent import LaurentPoly, RationalFunction
from .algebra.matrices import adjugate, det, matvec
from .algebra.smith import SmithForm, smith_normal_form
from .seifert import SeifertMatrix

__all__ = [
    "AlexanderModule",
    "Submodule",
    "IsotropicEnumeration",
    "DoublingCheck",
    "alexander_module",
    "blanchfield_pair",
    "is_isotropic",
    "check_doubling_hypothesis",
    "enumerate_isotropic_submodules",
]

_ONE = LaurentPoly.one()
_ZERO = LaurentPoly.zero()
_T = LaurentPoly.monomial(1, 1)
_ENUMERATION_CAP = 4096


def _vec(x, n) -> tuple:
    x = tuple(LaurentPoly.coerce(c) for c in x)
    if len(x) != n:
        raise ValueError(f"module element has {len(x)} coordinates, expected {n}")
    return x


class AlexanderModule:
    """Q[t, t^-1]-module presented by tV - V^T, with a cached Smith form."""

    def __init__(self, V):
        self.seifert = SeifertMatrix.of(V)
        n = self.seifert.size
        E = self.seifert.entries
        self.rank = n
        self.presentation = [[_T.scale(E[i][j]) - LaurentPoly.const(E[j][i]) for j in range(n)]
                             for i in range(n)]

    @cached_property
    def smith(self) -> SmithForm:
        return smith_normal_form(self.presentation)

    @cached_property
    def order(self) -> LaurentPoly:
        out = _ONE
        for d in self.smith.nonunit_entries:
            out = out * d
        return out

    @cached_property
    def _inverse(self):
        P = self.presentation
        return adjugate(P, _ONE), det(P, _ONE)

    @property
    def qdim(self) -> int:
        """Dimension over Q."""
        return sum(d.span for d in self.smith.diagonal)

    @property
    def is_cyclic(self) -> bool:
        return len(self.smith.nonunit_entries) <= 1

    def basis(self, i) -> tuple:
        return tuple(_ONE if j == i else _ZERO for j in range(self.rank))

    def element(self, x) -> tuple:
        return _vec(x, self.rank)

    # -- Smith coordinates ------------------------------------------------------
    def smith_coords(self, x) -> tuple:
        """Components of U x reduced modulo the diagonal entries."""
        x = self.element(x)
        out = []
        for row, d in zip(self.smith.left, self.smith.diagonal):
            c = sum((a * b for a, b in zip(row, x)), _ZERO)
            out.append(c.divmod(d)[1] if d else c)
        return tuple(out)

    def is_zero(self, x) -> bool:
        return not any(self.smith_coords(x))

    def equal(self, x, y) -> bool:
        x, y = self.element(x), self.element(y)
        return self.is_zero([a - b for a, b in zip(x, y)])

    def from_smith(self, z) -> tuple:
        """Original coordinates U^-1 z of a vector given in Smith coordinates."""
        z = [LaurentPoly.coerce(c) for c in z]
        return tuple(sum((a * b for a, b in zip(row, z)), _ZERO) for row in self.smith.left_inverse)

    # -- submodules -------------------------------------------------------------
    def quotient_dim(self, gens) -> int:
        """Q-dimension of the module modulo the submodule generated by gens."""
        gens = [self.element(g) for g in gens]
        if not gens:
            return self.qdim
        M = [list(row) + [g[i] for g in gens] for i, row in enumerate(self.presentation)]
        return sum(d.span for d in smith_normal_form(M).diagonal if d)

    def submodule_dim(self, gens) -> int:
        return self.qdim - self.quotient_dim(gens)

    def contains(self, gens, x) -> bool:
        return self.quotient_dim(list(gens) + [x]) == self.quotient_dim(gens)

    def same_submodule(self, gens1, gens2) -> bool:
        return (all(self.contains(gens1, g) for g in gens2)
                and all(self.contains(gens2, g) for g in gens1))

    # -- pairing ------------------------------------------------------------------
    def pair(self, x, y) -> RationalFunction:
        x, y = self.element(x), self.element(y)
        if self.rank == 0:
            return RationalFunction(_ZERO)
        adj, d = self._inverse
        w = matvec(adj, y)
        num = sum((a.bar() * b for a, b in zip(x, w)), _ZERO)
        return RationalFunction((_ONE - _T) * num, d).mod_laurent()


def alexander_module(V) -> AlexanderModule:
    return V if isinstance(V, AlexanderModule) else AlexanderModule(V)


def blanchfield_pair(V, x, y) -> RationalFunction:
    """Bl(x, y) reduced to its canonical proper-fraction representative."""
    return alexander_module(V).pair(x, y)


def is_isotropic(V, gens) -> bool:
    """True iff Bl vanishes on the submodule generated by ``gens``.

    Sesquilinearity reduces this to pairs of generators.
    """
    mod = alexander_module(V)
    gens = [mod.element(g) for g in gens]
    return all(mod.pair(a, b).is_zero() for a, b in itertools.combinations_with_replacement(gens, 2))


@dataclass(frozen=True)
class DoublingCheck:
    satisfied: bool
    witness: tuple | None  # (i, j, Bl(curve_i, curve_j))
    rank_shortcut: bool
    submodule_dim: int
    module_dim: int

    def to_dict(self) -> dict:
        out = {
            "satisfied": self.satisfied,
            "rank_shortcut": self.rank_shortcut,
            "submodule_dim": self.submodule_dim,
            "module_dim": self.module_dim,
            "witness": None,
        }
        if self.witness:
            i, j, v = self.witness
            out["witness"] = {"i": i, "j": j, "value": v.to_str()}
        return out


def check_doubling_hypothesis(V, curves) -> DoublingCheck:
    """Does the submodule generated by ``curves`` carry a nonzero pairing?

    The sufficient condition dim_Q(submodule) > dim_Q(module) / 2 is evaluated
    first (an isotropic submodule has at most half the dimension); a witness
    pair of curves is always produced when the answer is yes.
    """
    mod = alexander_module(V)
    curves = [mod.element(c) for c in curves]
    sub = mod.submodule_dim(curves) if curves else 0
    shortcut = 2 * sub > mod.qdim
    witness = None
    for i, j in itertools.combinations_with_replacement(range(len(curves)), 2):
        v = mod.pair(curves[i], curves[j])
        if not v.is_zero():
            witness = (i, j, v)
            break
    if shortcut and witness is None:
        raise AssertionError("rank condition holds but every curve pair is isotropic")
    return DoublingCheck(witness is not None, witness, shortcut, sub, mod.qdim)


@dataclass(frozen=True)
class Submodule:
    """Submodule generated by ``generators``; ``order`` is its order ideal."""

    order: LaurentPoly
    generators: tuple
    qdim: int

    @property
    def label(self) -> str:
        return "0" if self.qdim == 0 else self.order.primitive_integer().to_str()

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "order": self.order.to_str(),
            "dim": self.qdim,
            "generators": [[c.to_str() for c in g] for g in self.generators],
        }


@dataclass(frozen=True)
class IsotropicEnumeration:
    submodules: tuple
    complete: bool

    def __len__(self):
        return len(self.submodules)

    def __iter__(self):
        return iter(self.submodules)


def enumerate_isotropic_submodules(V) -> IsotropicEnumeration:
    """Isotropic submodules of the Alexander module.

    For a cyclic module Q[t, t^-1]/(d) every submodule is (d/f) for a monic
    divisor f of d, so the list is complete. Otherwise only direct sums of such
    submodules of the Smith summands are examined and ``complete`` is False.
    """
    mod = alexander_module(V)
    diag = mod.smith.diagonal
    slots = [i for i, d in enumerate(diag) if not d.is_unit()]
    choices = [[(d_f, f) for f in monic_divisors(diag[i]) for d_f in [diag[i].exact_div(f)]]
               for i in slots]
    found = []
    count = 0
    for combo in itertools.product(*choices):
        count += 1
        if count > _ENUMERATION_CAP:
            break
        gens = []
        order = _ONE
        for i, (cofactor, f) in zip(slots, combo):
            if f.is_unit():
                continue
            z = [_ZERO] * mod.rank
            z[i] = cofactor
            gens.append(mod.from_smith(z))
            order = order * f
        if is_isotropic(mod, gens):
            found.append(Submodule(order.normalized(), tuple(gens), order.span))
    found.sort(key=lambda s: (s.qdim, s.order.to_str()))
    complete = len(slots) <= 1 and count <= _ENUMERATION_CAP
    return IsotropicEnumeration(tuple(found), complete)
