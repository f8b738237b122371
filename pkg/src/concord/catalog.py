"""Named knots and patterns stored as one canonical JSON document.

Canonical form: UTF-8, keys sorted, two-space indent, trailing newline. An
entry is either a knot (Seifert matrix, flags, optional pattern block) or a
trivial link with one marked curve of a given depth.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import CatalogIOError, ConcordError, UnknownNameError
from .infection import FIGURE_EIGHT_PATTERN, R1_PATTERN, Curve, KnotRef, Pattern, trivial_link_pattern
from .seifert import SeifertMatrix

__all__ = ["CatalogEntry", "Catalog", "canonical_json", "default_catalog_path", "load_catalog"]

ENV_VAR = "CONCORD_CATALOG"
FORMAT_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class InvalidEntry(ConcordError, ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    kind: str = "knot"  # "knot" or "trivial-link"
    seifert: tuple | None = None
    slice: bool = False
    ribbon: bool = False
    amphichiral: bool = False
    aliases: tuple = ()
    pattern: dict | None = None  # {"curves": [...], "ribbon_kernels": [...]}
    components: int | None = None
    curve_depth: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "trivial-link":
            self.slice = self.ribbon = True

    # -- validation --------------------------------------------------------------
    def validate(self) -> "CatalogEntry":
        if not self.name or any(c in self.name for c in " (),^"):
            raise InvalidEntry(f"invalid entry name {self.name!r}")
        if self.kind == "knot":
            if self.seifert is None:
                raise InvalidEntry(f"{self.name}: knot entries need a seifert matrix")
            V = self.seifert_matrix()  # raises InvalidSeifertMatrix
            if self.ribbon and not self.slice:
                raise InvalidEntry(f"{self.name}: ribbon implies slice")
            if self.pattern is not None:
                self.as_pattern()
            if V.size == 0 and not self.slice:
                raise InvalidEntry(f"{self.name}: the empty Seifert matrix is the unknot, which is slice")
        elif self.kind == "trivial-link":
            if not isinstance(self.curve_depth, int) or not isinstance(self.components, int):
                raise InvalidEntry(f"{self.name}: trivial links need components and curve_depth")
            trivial_link_pattern(self.curve_depth, self.components)
        else:
            raise InvalidEntry(f"{self.name}: unknown entry kind {self.kind!r}")
        return self

    # -- conversions -------------------------------------------------------------
    def seifert_matrix(self) -> SeifertMatrix:
        return SeifertMatrix.of(self.seifert, self.name)

    def as_knot(self) -> KnotRef:
        if self.kind != "knot":
            raise UnknownNameError(f"{self.name} is a link pattern, not a knot")
        return KnotRef(self.name, self.seifert_matrix(), slice=self.slice, ribbon=self.ribbon,
                       amphichiral=self.amphichiral)

    def as_pattern(self) -> Pattern:
        if self.kind == "trivial-link":
            p = trivial_link_pattern(self.curve_depth, self.components)
            return p if p.id == self.name else Pattern(self.name, p.kind, p.components, p.curves,
                                                       sliceness="slice")
        if self.pattern is None:
            raise UnknownNameError(f"{self.name} has no pattern block")
        V = self.seifert_matrix()
        try:
            curves = tuple(Curve(c["id"], int(c["depth"]),
                                 tuple(c["class"]) if c.get("class") is not None else None)
                           for c in self.pattern["curves"])
            kernels = tuple(tuple(tuple(g) for g in k) for k in self.pattern.get("ribbon_kernels", []))
        except (KeyError, TypeError) as e:
            raise InvalidEntry(f"{self.name}: malformed pattern block ({e})") from None
        for k in kernels:
            for g in k:
                if len(g) != V.size:
                    raise InvalidEntry(f"{self.name}: ribbon kernel generator has wrong length")
        sliceness = "ribbon" if self.ribbon else "slice" if self.slice else "unknown"
        p = Pattern(self.pattern.get("id", self.name), "knot", 1, curves, V, sliceness,
                    self.amphichiral, kernels)
        for builtin in (R1_PATTERN, FIGURE_EIGHT_PATTERN):
            if p == builtin:
                return builtin
        return p

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind}
        if self.kind == "knot":
            out["seifert"] = [list(r) for r in self.seifert]
            out["flags"] = {"slice": self.slice, "ribbon": self.ribbon, "amphichiral": self.amphichiral}
            if self.pattern is not None:
                out["pattern"] = self.pattern
        else:
            out["components"] = self.components
            out["curve_depth"] = self.curve_depth
        if self.aliases:
            out["aliases"] = list(self.aliases)
        out.update(self.extra)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "CatalogEntry":
        if not isinstance(d, dict) or "name" not in d:
            raise InvalidEntry("catalog entry must be an object with a name")
        d = dict(d)
        name = d.pop("name")
        kind = d.pop("kind", "knot")
        flags = d.pop("flags", {}) or {}
        unknown_flags = set(flags) - {"slice", "ribbon", "amphichiral"}
        if unknown_flags:
            raise InvalidEntry(f"{name}: unknown flags {sorted(unknown_flags)}")
        seifert = d.pop("seifert", None)
        if seifert is not None:
            if not isinstance(seifert, list) or not all(isinstance(r, list) for r in seifert):
                raise InvalidEntry(f"{name}: seifert must be a list of rows")
            seifert = tuple(tuple(r) for r in seifert)
        e = cls(
            name=name,
            kind=kind,
            seifert=seifert,
            slice=bool(flags.get("slice", False)),
            ribbon=bool(flags.get("ribbon", False)),
            amphichiral=bool(flags.get("amphichiral", False)),
            aliases=tuple(d.pop("aliases", ())),
            pattern=d.pop("pattern", None),
            components=d.pop("components", None),
            curve_depth=d.pop("curve_depth", None),
        )
        e.extra = d
        return e.validate()


class Catalog:
    def __init__(self, entries=(), path: Path | None = None):
        self.path = path
        self.entries: dict[str, CatalogEntry] = {}
        for e in entries:
            self._insert(e)

    def _insert(self, e: CatalogEntry, replace: bool = False):
        names = (e.name,) + tuple(e.aliases)
        for n in names:
            owner = self._owner(n)
            if owner is not None and not (replace and owner.name == e.name):
                raise InvalidEntry(f"name {n!r} is already used by {owner.name}")
        self.entries[e.name] = e

    def _owner(self, name: str) -> CatalogEntry | None:
        if name in self.entries:
            return self.entries[name]
        for e in self.entries.values():
            if name in e.aliases:
                return e
        return None

    def __contains__(self, name):
        return self._owner(name) is not None

    def __iter__(self):
        return iter(sorted(self.entries.values(), key=lambda e: e.name))

    def get(self, name: str) -> CatalogEntry:
        e = self._owner(name)
        if e is None:
            raise UnknownNameError(f"unknown catalog name {name!r}")
        return e

    def knot(self, name: str) -> KnotRef:
        return self.get(name).as_knot()

    def pattern(self, name: str) -> Pattern:
        return self.get(name).as_pattern()

    def add(self, entry: CatalogEntry, replace: bool = False) -> None:
        entry.validate()
        self._insert(entry, replace)

    # -- persistence -------------------------------------------------------------
    def to_json(self) -> dict:
        return {"version": FORMAT_VERSION, "entries": [e.to_json() for e in self]}

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    @classmethod
    def loads(cls, text: str, path: Path | None = None) -> "Catalog":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise CatalogIOError(f"catalog {path or ''} is not valid JSON: {e}") from None
        if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
            raise CatalogIOError("catalog document must have an 'entries' list")
        return cls([CatalogEntry.from_json(d) for d in doc["entries"]], path)

    @classmethod
    def load(cls, path) -> "Catalog":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise CatalogIOError(f"cannot read catalog {path}: {e.strerror}") from None
        return cls.loads(text, path)

    def save(self, path=None) -> None:
        path = Path(path or self.path)
        try:
            path.write_text(self.dumps(), encoding="utf-8")
        except OSError as e:
            raise CatalogIOError(f"cannot write catalog {path}: {e.strerror}") from None


def default_catalog_path() -> Path:
    return Path(str(resources.files("concord") / "data" / "catalog.json"))


def catalog_path(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else default_catalog_path()


def load_catalog(explicit=None) -> Catalog:
    return Catalog.load(catalog_path(explicit))


def builtin_entries() -> list[CatalogEntry]:
    """Entries of the shipped default catalog."""
    r1 = {
        "id": "R1",
        "curves": [{"id": "eta+", "depth": 1, "class": [1, 0]}, {"id": "eta-", "depth": 1, "class": [0, 1]}],
        "ribbon_kernels": [[[1, 0]], [[0, 1]]],
    }
    fig8 = {
        "id": "figure-eight-pattern",
        "curves": [{"id": "eta1", "depth": 1, "class": [1, 0]}, {"id": "eta2", "depth": 1, "class": [0, 1]}],
        "ribbon_kernels": [],
    }
    out = [
        CatalogEntry("unknot", seifert=(), slice=True, ribbon=True, amphichiral=True),
        CatalogEntry("trefoil", seifert=((-1, 1), (0, -1))),
        CatalogEntry("figure-eight", seifert=((1, 1), (0, -1)), amphichiral=True),
        CatalogEntry("R1", seifert=((0, 2), (1, 0)), slice=True, ribbon=True, aliases=("9_46",), pattern=r1),
        CatalogEntry("figure-eight-pattern", seifert=((1, 1), (0, -1)), amphichiral=True, pattern=fig8),
    ]
    for k in range(1, 5):
        out.append(CatalogEntry(f"T{2 ** k}", kind="trivial-link", components=2 ** k, curve_depth=k))
    return [e.validate() for e in out]
