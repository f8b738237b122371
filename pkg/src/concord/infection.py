"""Infection terms: iterated satellite constructions and their bookkeeping.

A term is a tree. Leaves are knots; an ``Infect`` node applies a pattern (a
knot or trivial link with marked curves) to one child knot term per curve.
``Sum`` and ``Mirror`` nodes cover connected sums and mirror images of knots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapabilityError, ConcordError
from .freegroup import Word, bing_pattern_word, derived_depth
from .seifert import SeifertMatrix, arf, connected_sum, mirror

__all__ = [
    "KnotRef",
    "UNKNOT",
    "Curve",
    "Pattern",
    "Leaf",
    "Infect",
    "Sum",
    "Mirror",
    "Level",
    "CloneSet",
    "as_term",
    "knot",
    "R1_PATTERN",
    "FIGURE_EIGHT_PATTERN",
    "trivial_link_pattern",
    "build_Jn",
    "build_bing",
    "expand_clones",
    "solvable_level",
    "seifert_of",
    "leaves",
]


@dataclass(frozen=True)
class KnotRef:
    """A named knot. ``seifert`` is None for a purely symbolic knot."""

    name: str
    seifert: SeifertMatrix | None = None
    slice: bool = False
    ribbon: bool = False
    amphichiral: bool = False

    def __post_init__(self):
        if self.ribbon and not self.slice:
            object.__setattr__(self, "slice", True)
        if self.seifert is not None and self.seifert.size == 0:
            object.__setattr__(self, "slice", True)
            object.__setattr__(self, "ribbon", True)


UNKNOT = KnotRef("unknot", SeifertMatrix((), "unknot"), slice=True, ribbon=True, amphichiral=True)


def knot(name: str, V=None, **flags) -> KnotRef:
    return KnotRef(name, None if V is None else SeifertMatrix.of(V, name), **flags)


@dataclass(frozen=True)
class Curve:
    """A marked curve: its derived depth and either a module class or a word."""

    id: str
    depth: int
    module_class: tuple | None = None
    word: Word | None = None


@dataclass(frozen=True)
class Pattern:
    id: str
    kind: str  # "knot" or "link"
    components: int
    curves: tuple
    seifert: SeifertMatrix | None = None
    sliceness: str = "unknown"  # "ribbon", "slice" or "unknown"
    amphichiral: bool = False
    ribbon_kernels: tuple = ()  # generator lists of submodules that are ribbon-disk kernels

    def __post_init__(self):
        if self.kind not in ("knot", "link"):
            raise ValueError(f"pattern kind must be knot or link, not {self.kind!r}")
        if self.kind == "knot" and self.seifert is None:
            raise ValueError(f"knot pattern {self.id} needs a Seifert matrix")
        for c in self.curves:
            if c.depth < 1:
                raise ValueError(f"curve {c.id} must have depth >= 1")
            if c.word is not None:
                d, _ = derived_depth(c.word, min(c.depth, 3))
                if d != min(c.depth, 3):
                    raise ValueError(f"curve {c.id}: word has derived depth {d}, declared {c.depth}")
            if self.kind == "knot" and c.depth == 1:
                if c.module_class is None or len(c.module_class) != self.seifert.size:
                    raise ValueError(f"curve {c.id} needs a module class of length {self.seifert.size}")

    @property
    def is_slice(self) -> bool:
        return self.sliceness in ("ribbon", "slice")

    @property
    def min_depth(self) -> int:
        return min(c.depth for c in self.curves)

    def curve_ids(self) -> list[str]:
        return [c.id for c in self.curves]


def _e(i, n):
    return tuple(1 if j == i else 0 for j in range(n))


R1_PATTERN = Pattern(
    id="R1",
    kind="knot",
    components=1,
    seifert=SeifertMatrix(((0, 2), (1, 0)), "R1"),
    sliceness="ribbon",
    curves=(Curve("eta+", 1, _e(0, 2)), Curve("eta-", 1, _e(1, 2))),
    ribbon_kernels=((_e(0, 2),), (_e(1, 2),)),
)

FIGURE_EIGHT_PATTERN = Pattern(
    id="figure-eight-pattern",
    kind="knot",
    components=1,
    seifert=SeifertMatrix(((1, 1), (0, -1)), "figure-eight"),
    sliceness="unknown",
    amphichiral=True,
    curves=(Curve("eta1", 1, _e(0, 2)), Curve("eta2", 1, _e(1, 2))),
)


def trivial_link_pattern(k: int, m: int | None = None) -> Pattern:
    """Trivial link on m >= 2^k components with one curve of depth k."""
    w = bing_pattern_word(k)
    m = 2 ** k if m is None else m
    if m < 2 ** k:
        raise ValueError(f"a depth-{k} Bing curve needs at least {2 ** k} components")
    return Pattern(id=f"T{m}", kind="link", components=m, sliceness="slice",
                   curves=(Curve("alpha", k, word=w),))


# -- terms ---------------------------------------------------------------------

class Term:
    label: str | None

    @property
    def is_knot(self) -> bool:
        return self.components == 1

    def __str__(self):
        return self.label or self._default_str()


@dataclass(frozen=True, eq=True)
class Leaf(Term):
    knot: KnotRef
    label: str | None = field(default=None, compare=False)

    components = 1

    def _default_str(self):
        return self.knot.name


@dataclass(frozen=True, eq=True)
class Infect(Term):
    pattern: Pattern
    children: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.children) != len(self.pattern.curves):
            raise ValueError(f"pattern {self.pattern.id} has {len(self.pattern.curves)} curves, "
                             f"got {len(self.children)} children")
        for c in self.children:
            if not c.is_knot:
                raise CapabilityError("infection knots must be knots, not links")

    @property
    def components(self):
        return self.pattern.components

    def _default_str(self):
        return f"infect({self.pattern.id}, {', '.join(map(str, self.children))})"


@dataclass(frozen=True, eq=True)
class Sum(Term):
    left: Term
    right: Term
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not (self.left.is_knot and self.right.is_knot):
            raise CapabilityError("connected sum is only supported for knots")

    components = 1

    def _default_str(self):
        return f"sum({self.left}, {self.right})"


@dataclass(frozen=True, eq=True)
class Mirror(Term):
    child: Term
    label: str | None = field(default=None, compare=False)

    @property
    def components(self):
        return self.child.components

    def _default_str(self):
        return f"mirror({self.child})"


def as_term(x) -> Term:
    if isinstance(x, Term):
        return x
    if isinstance(x, KnotRef):
        return Leaf(x)
    if isinstance(x, SeifertMatrix):
        return Leaf(KnotRef(x.label or "K", x))
    raise TypeError(f"cannot make a term from {x!r}")


def leaves(term: Term) -> list[KnotRef]:
    if isinstance(term, Leaf):
        return [term.knot]
    if isinstance(term, Infect):
        return [k for c in term.children for k in leaves(c)]
    if isinstance(term, Sum):
        return leaves(term.left) + leaves(term.right)
    return leaves(term.child)


# -- builders -------------------------------------------------------------------

def build_Jn(n: int, K, pattern: Pattern = R1_PATTERN) -> Term:
    """J_0 = K and J_n = pattern(J_{n-1}, ..., J_{n-1})."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = as_term(K)
    base = str(t)
    for i in range(1, n + 1):
        label = f"Jn({i}, {base})" if pattern is R1_PATTERN else None
        t = Infect(pattern, (t,) * len(pattern.curves), label)
    return t


def build_bing(k: int, K_term, m: int | None = None) -> Infect:
    """k-fold iterated Bing double: one infection of a trivial link along a depth-k curve."""
    if k < 1:
        raise ValueError("k must be at least 1")
    child = as_term(K_term)
    label = f"BD({child})" if k == 1 else f"BD^{k}({child})"
    return Infect(trivial_link_pattern(k, m), (child,), label)


# -- clones and ghosts ------------------------------------------------------------

@dataclass(frozen=True)
class Clone:
    id: str
    depth: int
    infecting: Term


@dataclass(frozen=True)
class CloneSet:
    level: int
    clones: tuple
    ghosts: dict  # j -> tuple of (ghost id, depth)
    residual: Term

    def ghost_counts(self) -> tuple:
        return tuple(len(self.ghosts[j]) for j in sorted(self.ghosts))


def _tower_height(term: Term) -> int:
    h = 0
    while isinstance(term, Infect) and term.pattern.kind == "knot":
        h += 1
        term = term.children[0]
    return h


def _strip(term: Term, i: int) -> Term:
    """Replace everything below depth i by the unknot."""
    if i == 0:
        return Leaf(UNKNOT)
    if not isinstance(term, Infect):
        raise ValueError("term is not an infection tower of that height")
    kids = tuple(_strip(c, i - 1) for c in term.children)
    label = f"R{i}" if term.pattern is R1_PATTERN or term.pattern.id == "R1" else None
    return Infect(term.pattern, kids, label)


def expand_clones(term: Term, i: int) -> CloneSet:
    """View a tower of height n as R_i infected along its clones at level i.

    Clone ids are the sequences of curve ids from the outermost pattern down;
    each clone carries the subterm found there (J_{n-i}(K) for the J_n family).
    Ghosts of mu_j (j <= i) are indexed by paths of length i - j.
    """
    n = _tower_height(term)
    if not 0 <= i <= n:
        raise ValueError(f"clone level {i} out of range 0..{n}")

    def walk(t, k, path, depth):
        if k == 0:
            return [(path, depth, t)]
        out = []
        for curve, child in zip(t.pattern.curves, t.children):
            out.extend(walk(child, k - 1, path + (curve.id,), depth + curve.depth))
        return out

    clones = tuple(Clone("/".join(p) or "meridian", d, t) for p, d, t in walk(term, i, (), 0))
    ghosts = {}
    for j in range(i + 1):
        ghosts[j] = tuple(("/".join(p) or "meridian", d) for p, d, _ in walk(term, i - j, (), 0))
    return CloneSet(i, clones, ghosts, _strip(term, i))


# -- solvable filtration levels -----------------------------------------------------

@dataclass(frozen=True)
class Level:
    """Guaranteed filtration membership: slice, or (rationally) h-solvable."""

    slice: bool
    level: Fraction | None = None
    rational_only: bool = False

    @classmethod
    def sliced(cls) -> "Level":
        return cls(True)

    @classmethod
    def at(cls, h, rational_only=False) -> "Level":
        return cls(False, Fraction(h), rational_only)

    def __str__(self):
        if self.slice:
            return "slice by construction"
        hs = _level_str(self.level)
        return f"rationally ({hs})-solvable" if self.rational_only else f"({hs})-solvable"

    def to_dict(self) -> dict:
        if self.slice:
            return {"kind": "slice"}
        return {"kind": "level", "level": _level_str(self.level), "rational_only": self.rational_only}


def _level_str(h: Fraction) -> str:
    if h.denominator == 1:
        return str(h.numerator)
    if h.denominator == 2:
        return f"{h.numerator // 2}.5"
    raise ValueError(f"levels live in (1/2)Z, got {h}")


class MissingDataError(ConcordError, ValueError):
    pass


def solvable_level(term: Term) -> Level:
    """Lower bound on the solvable-filtration level guaranteed by the construction."""
    memo: dict = {}

    def go(t: Term) -> Level:
        key = id(t)
        if key in memo:
            return memo[key]
        if isinstance(t, Leaf):
            k = t.knot
            if k.slice:
                res = Level.sliced()
            elif k.seifert is None:
                raise MissingDataError(f"leaf {k.name} has neither a Seifert matrix nor a slice flag")
            else:
                res = Level.at(0, rational_only=arf(k.seifert) == 1)
        elif isinstance(t, Infect):
            kids = [go(c) for c in t.children]
            if t.pattern.is_slice:
                if all(k.slice for k in kids):
                    res = Level.sliced()
                else:
                    p = t.pattern.min_depth
                    q = min(k.level for k in kids if not k.slice)
                    res = Level.at(p + q, any(k.rational_only for k in kids))
            else:
                # a non-slice pattern only guarantees what its own Seifert form gives
                if t.pattern.kind == "knot":
                    res = Level.at(0, rational_only=arf(t.pattern.seifert) == 1)
                else:
                    res = Level.at(0, rational_only=True)
        elif isinstance(t, Sum):
            a, b = go(t.left), go(t.right)
            if a.slice and b.slice:
                res = Level.sliced()
            else:
                levels = [x.level for x in (a, b) if not x.slice]
                res = Level.at(min(levels), a.rational_only or b.rational_only)
        else:
            res = go(t.child)
        memo[key] = res
        return res

    return go(term)


def seifert_of(term: Term) -> SeifertMatrix:
    """Seifert matrix of a knot term; winding-zero infection keeps the pattern's."""
    if not term.is_knot:
        raise CapabilityError(f"{term} is a link; Seifert matrices are only defined here for knots")
    if isinstance(term, Leaf):
        if term.knot.seifert is None:
            raise MissingDataError(f"knot {term.knot.name} has no Seifert matrix")
        return term.knot.seifert
    if isinstance(term, Infect):
        return term.pattern.seifert
    if isinstance(term, Sum):
        return connected_sum(seifert_of(term.left), seifert_of(term.right))
    return mirror(seifert_of(term.child))
