"""Free groups: reduced words, Fox derivatives and derived-series depth.

Membership of a word in the k-th derived subgroup is decided in the free
solvable quotient F/F^(k) through the Magnus embedding: an element of
F/F^(k+1) is determined by its image g in F/F^(k) together with the vector of
its Fox derivatives with coefficients pushed into Z[F/F^(k)]. Starting from the
trivial group F/F^(0), this gives an exact normal form at every level.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import CapabilityError, ParseError

__all__ = [
    "Word",
    "GroupRingElement",
    "fox_derivative",
    "derived_depth",
    "solvable_image",
    "bing_pattern_word",
    "commutator",
    "MAX_DEPTH_LEVEL",
]

MAX_DEPTH_LEVEL = 4


def _reduce(letters) -> tuple:
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """Freely reduced word; letters are (generator index >= 1, exponent +-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        for g, e in letters:
            if g < 1 or e not in (1, -1):
                raise ValueError(f"bad letter ({g}, {e})")
        self.letters = _reduce((int(g), int(e)) for g, e in letters)

    @classmethod
    def gen(cls, i: int) -> "Word":
        return cls(((i, 1),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __invert__(self):
        return self.inverse()

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        return self.letters < other.letters

    @property
    def generators(self) -> set:
        return {g for g, _ in self.letters}

    @property
    def rank(self) -> int:
        return max(self.generators, default=0)

    def exponent_sums(self) -> dict:
        out: dict[int, int] = {}
        for g, e in self.letters:
            out[g] = out.get(g, 0) + e
        return {g: s for g, s in out.items() if s}

    def substitute(self, images: dict) -> "Word":
        """Replace generator i by ``images[i]`` (a Word); others stay."""
        out = []
        for g, e in self.letters:
            w = images.get(g, Word.gen(g))
            out.extend(w.letters if e == 1 else w.inverse().letters)
        return Word(out)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{g}" if e == 1 else f"x{g}^-1" for g, e in self.letters)

    def __repr__(self):
        return f"Word({self})"

    @classmethod
    def parse(cls, text: str) -> "Word":
        return _WordParser(text).parse()


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


class _WordParser:
    _token = re.compile(r"\s*(?:(x)(\d+)|(\^-1)|([\[\],])|(1)(?!\d))")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _peek(self):
        return self._token.match(self.text, self.pos)

    def parse(self) -> Word:
        w = self._product()
        rest = self.text[self.pos:]
        if rest.strip():
            raise ParseError(f"unexpected input {rest.strip()!r}", self.pos + len(rest) - len(rest.lstrip()))
        return w

    def _product(self) -> Word:
        w = Word()
        while True:
            m = self._peek()
            if not m:
                break
            if m.group(1):
                self.pos = m.end()
                g = int(m.group(2))
                if g < 1:
                    raise ParseError("generator indices start at 1", m.start(2))
                factor = Word.gen(g)
            elif m.group(5):
                self.pos = m.end()
                factor = Word()
            elif m.group(4) == "[":
                self.pos = m.end()
                u = self._product()
                self._expect(",")
                v = self._product()
                self._expect("]")
                factor = commutator(u, v)
            else:
                break
            m = self._peek()
            if m and m.group(3):
                self.pos = m.end()
                factor = factor.inverse()
            w = w * factor
        return w

    def _expect(self, ch):
        m = self._peek()
        if not m or m.group(4) != ch:
            rest = self.text[self.pos:]
            raise ParseError(f"expected {ch!r}", self.pos + len(rest) - len(rest.lstrip()))
        self.pos = m.end()


# -- group ring and Fox calculus ----------------------------------------------------

class GroupRingElement:
    """Finite Q-linear combination of reduced words (no zero coefficients)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[w] = t.get(w, 0) + c
        self.terms = {w: c for w, c in t.items() if c}

    @classmethod
    def of(cls, w: Word, c=1) -> "GroupRingElement":
        return cls({w: c})

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return GroupRingElement(t)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                t[w] = t.get(w, 0) + c1 * c2
        return GroupRingElement(t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElement.of(Word(), other)
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def abelianized(self) -> dict:
        """Image in the group ring of Z^n: map from exponent-sum vectors to coefficients."""
        out: dict = {}
        for w, c in self.terms.items():
            key = frozenset(w.exponent_sums().items())
            out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0].letters)):
            ws = "" if not w else str(w)
            if not ws:
                parts.append(str(c))
            elif c == 1:
                parts.append(ws)
            elif c == -1:
                parts.append(f"-{ws}")
            else:
                parts.append(f"{c}*{ws}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def fox_derivative(w: Word, g: int) -> GroupRingElement:
    """Fox derivative d w / d x_g in Q[F]."""
    terms: dict = {}
    L = w.letters
    for k, (h, e) in enumerate(L):
        if h != g:
            continue
        if e == 1:
            prefix = Word(L[:k])
            terms[prefix] = terms.get(prefix, 0) + 1
        else:
            prefix = Word(L[:k + 1])
            terms[prefix] = terms.get(prefix, 0) - 1
    return GroupRingElement(terms)


# -- free solvable quotients ---------------------------------------------------------

_TRIVIAL = ()


def _step(images_prev, letters):
    """Images of all prefixes at the next level.

    ``images_prev[k]`` is the frozen image in F/F^(m) of the prefix of length k.
    The image in F/F^(m+1) of the full word is (image in F/F^(m), Fox vector),
    where the Fox vector maps (generator, group element of F/F^(m)) to an
    integer coefficient. Returns the frozen images of every prefix.
    """
    vec: dict = {}
    out = [(images_prev[0], frozenset())]
    for k, (g, e) in enumerate(letters):
        if e == 1:
            key = (g, images_prev[k])
            vec[key] = vec.get(key, 0) + 1
        else:
            key = (g, images_prev[k + 1])
            vec[key] = vec.get(key, 0) - 1
        if vec[key] == 0:
            del vec[key]
        out.append((images_prev[k + 1], frozenset(vec.items())))
    return out


def solvable_image(w: Word, k: int):
    """Hashable normal form of w in F/F^(k) (equal iff the elements are equal)."""
    images = [_TRIVIAL] * (len(w.letters) + 1)
    for _ in range(k):
        images = _step(images, w.letters)
    return images[-1]


def derived_depth(w: Word, k_max: int = 3) -> tuple[int, bool]:
    """(depth, exact): the largest d <= k_max with w in F^(d).

    ``exact`` is True when w is also certified to lie outside F^(d+1), which
    is always the case when d < k_max; at d = k_max the next level is checked
    as well, so exact is False only if w lies in F^(k_max + 1).
    """
    if k_max > MAX_DEPTH_LEVEL:
        raise CapabilityError(f"k_max = {k_max} exceeds the supported bound {MAX_DEPTH_LEVEL}")
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if not w:
        raise ValueError("depth undefined (identity)")
    images = [_TRIVIAL] * (len(w.letters) + 1)
    for level in range(1, k_max + 2):
        images = _step(images, w.letters)
        if images[-1][1]:
            # nontrivial in F/F^(level), so w lies in F^(level-1) and not F^(level)
            return level - 1, True
    return k_max, False


def bing_pattern_word(n: int) -> Word:
    """Iterated commutator on 2^n generators for the n-fold Bing double.

    w_1 = [x1, x2]; w_{k+1} is w_k with each x_i replaced by [x_{2i-1}, x_{2i}].
    """
    if not 1 <= n <= MAX_DEPTH_LEVEL:
        raise CapabilityError(f"Bing pattern words are supported for 1 <= n <= {MAX_DEPTH_LEVEL}")
    w = commutator(Word.gen(1), Word.gen(2))
    for _ in range(n - 1):
        images = {i: commutator(Word.gen(2 * i - 1), Word.gen(2 * i)) for i in w.generators}
        w = w.substitute(images)
    return w
