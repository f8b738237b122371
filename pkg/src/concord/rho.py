"""Formal rho-invariant calculus and slice-obstruction verdicts.

Values are Q-linear combinations of three kinds of atoms:

* ``rho0``: the signature integral of a knot (known exactly or as an
  interval when the knot has a Seifert matrix),
* ``rho1``: the metabelian rho-invariant of a knot or pattern, optionally for
  a named isotropic submodule P (a formal symbol),
* ``cg``: the Cheeger-Gromov bound of a 3-manifold (a formal positive symbol).

Nothing here estimates rho1 or Cheeger-Gromov constants numerically;
certificates are conditional statements about these symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blanchfield import alexander_module, check_doubling_hypothesis, enumerate_isotropic_submodules
from .errors import ConcordError
from .infection import (
    Infect,
    KnotRef,
    Leaf,
    Mirror,
    Pattern,
    Sum,
    Term,
    _tower_height,
    as_term,
    leaves,
    seifert_of,
)
from .seifert import SeifertMatrix, alexander_polynomial, arf, is_algebraically_slice
from .signature import Rho0Value, rho0

__all__ = [
    "RhoAtom",
    "RhoExpr",
    "Verdict",
    "FirstOrderSignatures",
    "rho0_atom",
    "rho1_value",
    "additivity_expand",
    "first_order_signatures",
    "slice_obstruction",
]


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RhoAtom:
    kind: str  # "rho0", "rho1", "rho" (a manifold with its system) or "cg"
    ref: str
    qualifier: str | None = None  # submodule label for rho1 at P != 0
    value: Rho0Value | None = field(default=None, compare=False)

    def __str__(self):
        if self.kind == "rho0":
            return f"rho0({self.ref})"
        if self.kind == "rho1":
            return f"rho1({self.ref})" if self.qualifier is None else f"rho1[{self.qualifier}]({self.ref})"
        if self.kind == "rho":
            return f"rho({self.ref}, phi)"
        return f"C(M_{self.ref})"


class RhoExpr:
    """``constant + sum(coeff * atom)`` with exact rational coefficients."""

    __slots__ = ("terms", "constant")

    def __init__(self, terms=None, constant=0):
        t: dict = {}
        for a, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[a] = t.get(a, 0) + c
        self.terms = {a: c for a, c in t.items() if c}
        self.constant = Fraction(constant)

    @classmethod
    def atom(cls, a: RhoAtom, coeff=1) -> "RhoExpr":
        return cls({a: coeff})

    @classmethod
    def const(cls, c) -> "RhoExpr":
        return cls(None, c)

    def __add__(self, other):
        other = _expr(other)
        t = dict(self.terms)
        for a, c in other.terms.items():
            t[a] = t.get(a, 0) + c
        return RhoExpr(t, self.constant + other.constant)

    __radd__ = __add__

    def __neg__(self):
        return RhoExpr({a: -c for a, c in self.terms.items()}, -self.constant)

    def __sub__(self, other):
        return self + (-_expr(other))

    def __mul__(self, k):
        k = Fraction(k)
        return RhoExpr({a: c * k for a, c in self.terms.items()}, self.constant * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RhoExpr.const(other)
        return isinstance(other, RhoExpr) and self.terms == other.terms and self.constant == other.constant

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.constant))

    def atoms(self) -> set:
        return set(self.terms)

    def substitute(self) -> "RhoExpr":
        """Replace rho0 atoms whose value is known exactly by that value."""
        t = {}
        const = self.constant
        for a, c in self.terms.items():
            if a.kind == "rho0" and a.value is not None and a.value.exact is not None:
                const += c * a.value.exact
            else:
                t[a] = c
        return RhoExpr(t, const)

    def symbols(self) -> dict:
        """Atoms with no exact value."""
        return {a: c for a, c in self.substitute().terms.items()
                if not (a.kind == "rho0" and a.value is not None)}

    def status(self) -> str:
        """'zero', 'nonzero' or 'symbolic' after substituting known values."""
        e = self.substitute()
        if self.symbols():
            return "symbolic"
        lo = hi = e.constant
        for a, c in e.terms.items():  # rho0 atoms known only as intervals
            lo += min(c * a.value.lo, c * a.value.hi)
            hi += max(c * a.value.lo, c * a.value.hi)
        if lo == hi == 0:
            return "zero"
        if lo > 0 or hi < 0:
            return "nonzero"
        return "symbolic"

    def exceptional_hyperplane(self) -> str | None:
        """Condition under which a symbolic expression could vanish."""
        e = self.substitute()
        syms = self.symbols()
        if not syms:
            return None
        rest = e - RhoExpr(syms)
        lhs = str(RhoExpr(syms))
        rhs = str(-rest)
        return f"{lhs} = {rhs}"

    def __str__(self):
        parts = []
        for a, c in sorted(self.terms.items(), key=lambda ac: (ac[0].kind != "rho1", ac[0].kind, ac[0].ref,
                                                                ac[0].qualifier or "")):
            if c == 1:
                s = str(a)
            elif c == -1:
                s = f"-{a}"
            else:
                s = f"{_q(c)}*{a}"
            parts.append(s)
        if self.constant or not parts:
            parts.append(_q(self.constant))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__

    def to_dict(self) -> dict:
        e = self.substitute()
        out = {"expression": str(self), "substituted": str(e), "status": self.status()}
        h = self.exceptional_hyperplane()
        if h:
            out["nonzero_unless"] = h
        return out


def _expr(x) -> RhoExpr:
    if isinstance(x, RhoExpr):
        return x
    if isinstance(x, RhoAtom):
        return RhoExpr.atom(x)
    return RhoExpr.const(x)


# -- atoms for knots -----------------------------------------------------------------

def _knot_seifert(term: Term) -> SeifertMatrix | None:
    try:
        return seifert_of(term)
    except ConcordError:
        return None


def rho0_atom(term) -> RhoExpr:
    """rho_0 of a knot term (exact zero for slice leaves, an atom otherwise)."""
    term = as_term(term)
    if isinstance(term, Leaf) and term.knot.slice:
        return RhoExpr.const(0)
    V = _knot_seifert(term)
    if V is not None and V.size == 0:
        return RhoExpr.const(0)
    value = rho0(V) if V is not None else None
    return RhoExpr.atom(RhoAtom("rho0", str(term), value=value))


def rho1_value(ref) -> RhoExpr:
    """rho^1 of a knot or pattern: 0 when amphichiral or trivial, else a symbol."""
    if isinstance(ref, Pattern):
        if ref.amphichiral:
            return RhoExpr.const(0)
        return RhoExpr.atom(RhoAtom("rho1", ref.id))
    if isinstance(ref, KnotRef):
        ref = Leaf(ref)
    term = as_term(ref)
    if isinstance(term, Leaf):
        k = term.knot
        if k.amphichiral or (k.seifert is not None and k.seifert.size == 0):
            return RhoExpr.const(0)
    if isinstance(term, Infect) and term.pattern.kind == "knot":
        return rho1_value(term.pattern) if _all_leaves_unknotted(term) else RhoExpr.atom(RhoAtom("rho1", str(term)))
    if isinstance(term, Mirror):
        return -rho1_value(term.child)
    V = _knot_seifert(term)
    if V is not None:
        if alexander_polynomial(V) == 1:
            # trivial Alexander module: the metabelian system factors through Z
            return rho0_atom(term)
    return RhoExpr.atom(RhoAtom("rho1", str(term)))


def _all_leaves_unknotted(term: Term) -> bool:
    return all(k.seifert is not None and k.seifert.size == 0 for k in leaves(term))


# -- additivity ------------------------------------------------------------------------

def additivity_expand(term, scenario, base=None, level: int = 1) -> RhoExpr:
    """rho of an infection under a coefficient system Gamma with Gamma^(level+1) = 1.

    ``scenario`` maps each curve id of the outermost pattern (or lists, in
    order) to eps in {0, 1}: whether the curve survives in Gamma. The result
    is ``base + sum eps_i * rho0(child_i)``; ``base`` defaults to rho1 of the
    pattern. Curves must lie in the level-th derived subgroup, and a curve
    deeper than ``level`` is forced to eps = 0. Sums take a pair of scenarios
    and mirrors negate.
    """
    term = as_term(term)
    if isinstance(term, Sum):
        s1, s2 = scenario
        b1, b2 = (None, None) if base is None else base
        return additivity_expand(term.left, s1, b1, level) + additivity_expand(term.right, s2, b2, level)
    if isinstance(term, Mirror):
        return -additivity_expand(term.child, scenario, base, level)
    if not isinstance(term, Infect):
        raise ValueError("additivity applies to infection terms")
    pat = term.pattern
    ids = pat.curve_ids()
    if not isinstance(scenario, dict):
        scenario = dict(zip(ids, scenario)) if len(scenario) == len(ids) else None
    if scenario is None or set(scenario) != set(ids):
        raise ValueError(f"scenario domain mismatch: expected curves {ids}")
    out = rho1_value(pat) if base is None else _expr(base)
    for curve, child in zip(pat.curves, term.children):
        eps = scenario[curve.id]
        if eps not in (0, 1):
            raise ValueError(f"eps for {curve.id} must be 0 or 1")
        if curve.depth < level:
            raise ValueError(f"curve {curve.id} has depth {curve.depth} < {level}; "
                             "the induced system on the infecting knot need not be abelian")
        if curve.depth > level and eps:
            raise ValueError(f"curve {curve.id} lies in the ({level + 1})-st derived subgroup, so eps must be 0")
        if eps:
            out = out + rho0_atom(child)
    return out


# -- first-order signatures ----------------------------------------------------------------

@dataclass(frozen=True)
class FirstOrderSignatures:
    entries: tuple  # (submodule label, RhoExpr)
    complete: bool

    @property
    def expressions(self) -> list:
        return [e for _, e in self.entries]

    def as_set(self) -> set:
        return set(self.expressions)

    def __len__(self):
        return len(self.entries)

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "signatures": [dict(submodule=lab, **e.to_dict()) for lab, e in self.entries],
        }


def first_order_signatures(term) -> FirstOrderSignatures:
    """One expression per isotropic submodule P of the Alexander module."""
    if isinstance(term, SeifertMatrix):
        term = Leaf(KnotRef(term.label or "K", term))
    term = as_term(term)
    if isinstance(term, Mirror):
        inner = first_order_signatures(term.child)
        return FirstOrderSignatures(tuple((lab, -e) for lab, e in inner.entries), inner.complete)
    if not term.is_knot:
        raise ValueError("first-order signatures are defined for knots")

    if isinstance(term, Infect):
        pat = term.pattern
        mod = alexander_module(pat.seifert)
        enum = enumerate_isotropic_submodules(mod)
        entries = []
        for P in enum:
            scen = {}
            for curve in pat.curves:
                if curve.depth > 1:
                    scen[curve.id] = 0
                else:
                    scen[curve.id] = 0 if mod.contains(P.generators, curve.module_class) else 1
            if P.qdim == 0:
                base = rho1_value(pat)
            elif any(mod.same_submodule(P.generators, ker) for ker in pat.ribbon_kernels):
                base = RhoExpr.const(0)
            else:
                base = RhoExpr.atom(RhoAtom("rho1", pat.id, P.label))
            entries.append((P.label, additivity_expand(term, scen, base)))
        return FirstOrderSignatures(tuple(entries), enum.complete)

    V = _knot_seifert(term)
    if V is None:
        return FirstOrderSignatures((("0", rho1_value(term)),), False)
    enum = enumerate_isotropic_submodules(V)
    entries = []
    for P in enum:
        if P.qdim == 0:
            entries.append((P.label, rho1_value(term)))
        else:
            entries.append((P.label, RhoExpr.atom(RhoAtom("rho1", str(term), P.label))))
    return FirstOrderSignatures(tuple(entries), enum.complete)


# -- verdicts -----------------------------------------------------------------------------------

@dataclass
class Verdict:
    kind: str  # "obstructed", "slice" or "inconclusive"
    term: str
    reason: str = ""
    certificate: dict | None = None
    scenarios: list = field(default_factory=list)
    conditional: bool = False

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "verdict": self.kind,
            "conditional": self.conditional,
            "reason": self.reason,
            "certificate": self.certificate,
            "scenarios": self.scenarios,
        }


def _tower(term: Term):
    """(height, patterns per level, base knot) for an iterated doubling tower."""
    n = _tower_height(term)
    if n == 0:
        return None
    levels: list[set] = [set() for _ in range(n)]
    base = set()

    def walk(t, d):
        if d == n:
            if not isinstance(t, Leaf):
                return False
            base.add(t.knot)
            return True
        if not isinstance(t, Infect) or t.pattern.kind != "knot":
            return False
        levels[d].add(t.pattern)
        return all(walk(c, d + 1) for c in t.children)

    if not walk(term, 0) or len(base) != 1:
        return None
    return n, levels, next(iter(base))


def _doubling_ok(pattern: Pattern) -> bool:
    if not pattern.is_slice:
        return False
    curves = [c.module_class for c in pattern.curves if c.depth == 1 and c.module_class is not None]
    return check_doubling_hypothesis(pattern.seifert, curves).satisfied


def _tower_verdict(term: Term, tw, offset: int = 0, link: bool = False) -> Verdict | None:
    """Cheeger-Gromov certificate for a tower whose base knot has rho0 != 0.

    A nonzero multiple of the tower bounding a rationally (n.5)-solvable
    manifold forces rho(M, phi) = rho(M_residual, phi) + s * rho0(K) for some
    number s >= 1 of surviving clones, and the residual term is bounded by
    the Cheeger-Gromov constant of its exterior.
    """
    n, levels, K = tw
    if not all(_doubling_ok(p) for lvl in levels for p in lvl):
        return None
    r0 = rho0_atom(Leaf(K))
    if r0.status() == "zero":
        return Verdict("inconclusive", str(term), reason=f"rho0({K.name}) = 0, so no clone count exceeds the bound")
    manifold = f"{term.pattern.id}(alpha, R{n})" if link else f"R{n}"
    C = RhoAtom("cg", manifold)
    residual = RhoAtom("rho", f"M_{manifold}")
    rows = []
    for s in range(1, 2 ** n + 1):
        e = RhoExpr.atom(residual) + r0 * s
        rows.append({
            "surviving_clones": s,
            "expression": str(e),
            "substituted": str(e.substitute()),
            "vanishing_requires": f"|{_q(s)}*rho0({K.name})| <= {C}",
        })
    total = n + offset
    if link:
        conclusion = f"not slice, nor rationally ({total + 1})-solvable"
    else:
        conclusion = f"no nonzero multiple is rationally ({total}.5)-solvable; not slice"
    atom = next(iter(r0.atoms()))
    cert = {
        "type": "cg-bound",
        "inequality": f"|rho0({K.name})| > {C}",
        "threshold": str(C),
        "rho0": atom.value.to_dict() if atom.value is not None else str(r0),
        "conclusion": conclusion,
    }
    return Verdict("obstructed", str(term), reason="iterated doubling with nondegenerate curves",
                   certificate=cert, scenarios=rows, conditional=True)


def slice_obstruction(term) -> Verdict:
    term = as_term(term)
    name = str(term)
    lv = leaves(term)
    if all(k.slice for k in lv) and (not isinstance(term, Infect) or term.pattern.is_slice):
        return Verdict("slice", name, reason="every pattern and leaf is slice")

    # classical obstruction for knots
    if term.is_knot:
        V = _knot_seifert(term)
        if V is not None:
            res = is_algebraically_slice(V)
            if res.kind == "no":
                cert = dict(res.certificate)
                cert["test"] = cert.pop("type")
                cert.update(type="classical", conclusion="not slice")
                return Verdict("obstructed", name, reason="not algebraically slice", certificate=cert)

    tw = _tower(term) if term.is_knot else None
    if tw is not None:
        v = _tower_verdict(term, tw)
        if v is not None:
            return v

    if isinstance(term, Infect) and term.pattern.kind == "link" and len(term.children) == 1:
        return _bing_verdict(term)

    return Verdict("inconclusive", name, reason="no applicable obstruction")


def _bing_verdict(term: Infect) -> Verdict:
    curve = term.pattern.curves[0]
    k = curve.depth
    child = term.children[0]
    name = str(term)
    fos = first_order_signatures(child)
    rows = []
    bad = None
    conditional = False
    for lab, e in fos.entries:
        st = e.status()
        row = {"submodule": lab, **e.to_dict()}
        rows.append(row)
        if st == "zero":
            bad = bad or (lab, e, "vanishes")
        elif st == "symbolic":
            if e.substitute().constant == 0:
                bad = bad or (lab, e, "has no exact part")
            else:
                conditional = True
    if bad is None and not fos.complete:
        bad = (None, None, "the isotropic submodule enumeration is incomplete")
    if bad is None:
        conds = [r["nonzero_unless"] for r in rows if "nonzero_unless" in r]
        cert = {
            "type": "first-order",
            "signatures": [r["substituted"] for r in rows],
            "conclusion": f"not slice in a rational homology ball, nor rationally ({k + 1}.5)-solvable",
        }
        if conds:
            cert["nonzero_unless"] = conds
        return Verdict("obstructed", name, reason="every first-order signature of the infecting knot is nonzero",
                       certificate=cert, scenarios=rows, conditional=conditional)

    # link version of the tower argument for J_m(K) with Arf(K) = 0
    tw = _tower(child)
    if tw is not None:
        K = tw[2]
        if K.seifert is not None and arf(K.seifert) == 0:
            v = _tower_verdict(term, tw, offset=k, link=True)
            if v is not None and v.kind == "obstructed":
                return v

    lab, e, why = bad
    reason = f"first-order signature {e} (P = {lab}) {why}" if e is not None else why
    return Verdict("inconclusive", name, reason=reason, scenarios=rows)
