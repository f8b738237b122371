"""Recursive-descent parser for the term language.

    term   := name
            | "Jn" "(" int "," term ")"
            | "BD" ["^" int] "(" term ")"
            | "infect" "(" name "," term {"," term} ")"
            | "sum" "(" term "," term ")"
            | "mirror" "(" term ")"

Names are resolved against a catalog: knots become leaves, and the first
argument of ``infect`` names a pattern.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .infection import Infect, Leaf, Mirror, Sum, Term, build_bing, build_Jn

__all__ = ["parse_term"]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+(?![A-Za-z_\-+.]))|(?P<name>[A-Za-z0-9_][A-Za-z0-9_\-+.]*)|(?P<punct>[(),^]))")
_KEYWORDS = {"Jn", "BD", "infect", "sum", "mirror"}


class _Parser:
    def __init__(self, text: str, catalog):
        self.text = text
        self.catalog = catalog
        self.pos = 0

    def _next(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            if self.text[self.pos:].strip():
                raise ParseError(f"unexpected character {self.text[self.pos:].strip()[0]!r}", self._skip_ws())
            raise ParseError("unexpected end of input", len(self.text))
        self.pos = m.end()
        kind = m.lastgroup
        return kind, m.group(kind), m.start(kind)

    def _skip_ws(self) -> int:
        p = self.pos
        while p < len(self.text) and self.text[p].isspace():
            p += 1
        return p

    def _peek(self):
        save = self.pos
        try:
            return self._next()
        except ParseError:
            return None
        finally:
            self.pos = save

    def _expect(self, ch):
        tok = self._peek()
        if tok is None or tok[1] != ch:
            raise ParseError(f"expected {ch!r}", self._skip_ws())
        self._next()

    def _int(self) -> int:
        tok = self._peek()
        if tok is None or tok[0] != "int":
            raise ParseError("expected an integer", self._skip_ws())
        self._next()
        return int(tok[1])

    def _name(self) -> tuple[str, int]:
        tok = self._peek()
        if tok is None or tok[0] not in ("name", "int"):
            raise ParseError("expected a name", self._skip_ws())
        self._next()
        return tok[1], tok[2]

    def parse(self) -> Term:
        t = self.term()
        if self.text[self.pos:].strip():
            raise ParseError(f"unexpected trailing input {self.text[self.pos:].strip()!r}", self._skip_ws())
        return t

    def term(self) -> Term:
        name, at = self._name()
        nxt = self._peek()
        if name in _KEYWORDS and nxt is not None and nxt[1] in ("(", "^"):
            return getattr(self, "_" + name.lower())(at)
        return Leaf(self.catalog.knot(name))

    def _jn(self, at):
        self._expect("(")
        n = self._int()
        self._expect(",")
        child = self.term()
        self._expect(")")
        return build_Jn(n, child)

    def _bd(self, at):
        k = 1
        tok = self._peek()
        if tok and tok[1] == "^":
            self._next()
            k = self._int()
            if k < 1:
                raise ParseError("Bing iteration count must be at least 1", self._skip_ws())
        self._expect("(")
        child = self.term()
        self._expect(")")
        if not child.is_knot:
            raise ParseError("BD takes a knot term", at)
        return build_bing(k, child)

    def _infect(self, at):
        self._expect("(")
        pname, _ = self._name()
        pattern = self.catalog.pattern(pname)
        kids = []
        while True:
            tok = self._peek()
            if tok and tok[1] == ",":
                self._next()
                kids.append(self.term())
            else:
                break
        self._expect(")")
        if len(kids) != len(pattern.curves):
            raise ParseError(f"pattern {pname} takes {len(pattern.curves)} knot arguments, got {len(kids)}", at)
        return Infect(pattern, tuple(kids))

    def _sum(self, at):
        self._expect("(")
        a = self.term()
        self._expect(",")
        b = self.term()
        self._expect(")")
        return Sum(a, b)

    def _mirror(self, at):
        self._expect("(")
        a = self.term()
        self._expect(")")
        return Mirror(a)


def parse_term(text: str, catalog) -> Term:
    """Parse ``text``; ParseError carries the 0-based character position."""
    return _Parser(text, catalog).parse()
