"""Command-line front end.

Every command builds a JSON-compatible report. With ``--json`` the report is
printed as canonical JSON (validated against ``data/schemas/<command>.json``
in the test suite); otherwise it is rendered as indented ``key: value`` text.
Rationals print as p/q and enclosures as midpoint±radius; no bare floats.

Exit codes: 0 success, 1 other errors, 2 parse, 3 unknown name, 4 I/O,
5 capability bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra.laurent import LaurentPoly
from .blanchfield import alexander_module, check_doubling_hypothesis, enumerate_isotropic_submodules
from .catalog import CatalogEntry, canonical_json, catalog_path, load_catalog
from .errors import CatalogIOError, ConcordError, ParseError
from .freegroup import Word, derived_depth
from .infection import build_bing, build_Jn, expand_clones, seifert_of, solvable_level
from .rho import slice_obstruction
from .seifert import alexander_polynomial, arf, genus1_metabolizers, is_algebraically_slice
from .signature import rho0, signature_function, step_records
from .terms import parse_term

COMMANDS = ("invariants", "obstruct", "sigfn", "rho0", "blanchfield", "metabolizers", "family", "depth",
            "catalog")


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _radius(bits: int) -> Fraction:
    return Fraction(1, 2 ** bits)


def _knot_seifert(term):
    if not term.is_knot:
        return None
    try:
        return seifert_of(term)
    except ConcordError:
        return None


def _level(term) -> dict | None:
    try:
        return solvable_level(term).to_dict()
    except ConcordError:
        return None


def _sigfn_summary(sf) -> dict:
    return {
        "jumps": [{"isolating_interval": [_q(a.lo), _q(a.hi)]} for a in sf.jumps],
        "plateaus": list(sf.plateaus),
        "sample_points": [_q(x) for x in sf.sample_points],
        "value_at_minus_one": sf.value_at_minus_one,
    }


# -- commands ---------------------------------------------------------------------

def cmd_invariants(args, cat) -> dict:
    term = parse_term(args.term, cat)
    out = {"term": str(term), "components": term.components, "level": _level(term)}
    V = _knot_seifert(term)
    if V is None:
        out["classical"] = None
        return out
    sf = signature_function(V)
    out["classical"] = {
        "seifert": [list(r) for r in V.entries],
        "genus": V.genus,
        "alexander": alexander_polynomial(V).to_str(),
        "arf": arf(V),
        "signature_function": _sigfn_summary(sf),
        "rho0": rho0(sf, _radius(args.precision)).to_dict(),
        "algebraically_slice": is_algebraically_slice(V).to_dict(),
    }
    return out


def cmd_obstruct(args, cat) -> dict:
    return slice_obstruction(parse_term(args.term, cat)).to_dict()


def cmd_sigfn(args, cat) -> dict:
    term = parse_term(args.knot, cat)
    V = _seifert_or_fail(term)
    rows = step_records(V, args.digits)
    if args.csv == "-":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta_lo", "theta_hi", "sigma"])
        w.writerows(rows)
        return buf.getvalue()
    if args.csv:
        try:
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["theta_lo", "theta_hi", "sigma"])
                w.writerows(rows)
        except OSError as e:
            raise CatalogIOError(f"cannot write {args.csv}: {e.strerror}") from None
    return {
        "term": str(term),
        "digits": args.digits,
        "rows": [{"theta_lo": lo, "theta_hi": hi, "sigma": s} for lo, hi, s in rows],
        "csv": args.csv,
    }


def cmd_rho0(args, cat) -> dict:
    term = parse_term(args.knot, cat)
    V = _seifert_or_fail(term)
    return {"term": str(term), "precision_bits": args.precision, **rho0(V, _radius(args.precision)).to_dict()}


def _parse_vector(text: str, n: int) -> tuple:
    parts = [p for p in text.split(",")]
    if len(parts) != n:
        raise ParseError(f"vector {text!r} needs {n} comma-separated coordinates")
    out = []
    for p in parts:
        try:
            out.append(LaurentPoly.parse(p.strip()))
        except ParseError:
            raise
        except ValueError as e:
            raise ParseError(f"bad coordinate {p!r}: {e}") from None
    return tuple(out)


def cmd_blanchfield(args, cat) -> dict:
    term = parse_term(args.knot, cat)
    V = _seifert_or_fail(term)
    mod = alexander_module(V)
    n = mod.rank
    gram = [[mod.pair(mod.basis(i), mod.basis(j)).to_str() for j in range(n)] for i in range(n)]
    enum = enumerate_isotropic_submodules(mod)
    out = {
        "term": str(term),
        "order": mod.order.to_str(),
        "smith_diagonal": [d.to_str() for d in mod.smith.diagonal],
        "qdim": mod.qdim,
        "cyclic": mod.is_cyclic,
        "pairing_matrix": gram,
        "isotropic_submodules": [s.to_dict() for s in enum],
        "enumeration_complete": enum.complete,
    }
    if args.pair:
        x, y = (_parse_vector(v, n) for v in args.pair)
        out["pair"] = {"x": args.pair[0], "y": args.pair[1], "value": mod.pair(x, y).to_str()}
    if args.curves:
        curves = [_parse_vector(v, n) for v in args.curves]
        out["doubling_check"] = check_doubling_hypothesis(mod, curves).to_dict()
    return out


def cmd_metabolizers(args, cat) -> dict:
    term = parse_term(args.knot, cat)
    V = _seifert_or_fail(term)
    out = {"term": str(term), "genus": V.genus,
           "algebraically_slice": is_algebraically_slice(V, args.bound).to_dict()}
    if V.genus == 1:
        rep = genus1_metabolizers(V)
        out["genus1"] = {"kind": rep.kind, "lines": [list(v) for v in rep.lines],
                         "discriminant": rep.discriminant}
    return out


def cmd_family(args, cat) -> dict:
    base = parse_term(args.knot, cat)
    if not base.is_knot:
        raise ParseError("family members are built from a knot term")
    rows = []
    if args.family == "Jn":
        for k in range(args.n + 1):
            t = build_Jn(k, base)
            rows.append({"term": str(t), "level": _level(t), "verdict": slice_obstruction(t).kind})
        top = build_Jn(args.n, base)
        clones = []
        for i in range(args.n + 1):
            cs = expand_clones(top, i)
            clones.append({"level": i, "clones": len(cs.clones), "ghost_counts": list(cs.ghost_counts()),
                           "residual": str(cs.residual)})
        return {"family": "Jn", "base": str(base), "members": rows, "clones": clones}
    for k in range(1, args.n + 1):
        t = build_bing(k, base)
        rows.append({"term": str(t), "components": t.components, "level": _level(t),
                     "verdict": slice_obstruction(t).kind})
    return {"family": "BD", "base": str(base), "members": rows, "clones": []}


def cmd_depth(args, cat) -> dict:
    w = Word.parse(args.word)
    d, exact = derived_depth(w, args.kmax)
    return {"word": str(w), "length": len(w), "kmax": args.kmax, "depth": d, "exact": exact}


def cmd_catalog(args, cat) -> dict | str:
    if args.action == "list":
        return {"path": str(cat.path), "entries": [
            {"name": e.name, "kind": e.kind, "aliases": list(e.aliases),
             "pattern": e.pattern is not None or e.kind == "trivial-link",
             "flags": {"slice": e.slice, "ribbon": e.ribbon, "amphichiral": e.amphichiral}}
            for e in cat]}
    if args.action == "show":
        return canonical_json(cat.get(args.name).to_json())
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as e:
        raise CatalogIOError(f"cannot read {args.file}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"entry file is not valid JSON: {e.msg}", e.pos) from None
    entry = CatalogEntry.from_json(doc)
    cat.add(entry, replace=args.replace)
    cat.save()
    return {"added": entry.name, "path": str(cat.path)}


def _seifert_or_fail(term):
    V = _knot_seifert(term)
    if V is None:
        from .errors import CapabilityError
        raise CapabilityError(f"{term} has no Seifert matrix (links and symbolic knots are not supported here)")
    return V


# -- rendering ----------------------------------------------------------------------

def _render(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                sub = _render(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="concord", description="Exact knot-concordance invariants and obstructions.")
    p.add_argument("--version", action="version", version=f"concord {__version__}")
    p.add_argument("--json", action="store_true", help="print machine-readable JSON")
    p.add_argument("--precision", type=int, default=100, metavar="BITS",
                   help="enclosure radius 2^-BITS for rho0 (default 100)")
    p.add_argument("--catalog", metavar="PATH", help="catalog file (default: $CONCORD_CATALOG or the shipped one)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="classical invariants of a knot term")
    s.add_argument("term")
    s = sub.add_parser("obstruct", help="slice-obstruction verdict for a term")
    s.add_argument("term")
    s = sub.add_parser("sigfn", help="signature step function")
    s.add_argument("knot")
    s.add_argument("--csv", metavar="PATH", help="write theta_lo,theta_hi,sigma rows to PATH (- for stdout)")
    s.add_argument("--digits", type=int, default=30, help="certified decimal digits (default 30)")
    s = sub.add_parser("rho0", help="integral of the signature function")
    s.add_argument("knot")
    s = sub.add_parser("blanchfield", help="Alexander module and Blanchfield pairing")
    s.add_argument("knot")
    s.add_argument("--pair", nargs=2, metavar=("X", "Y"), help="pair two vectors, coordinates comma-separated")
    s.add_argument("--curves", nargs="+", metavar="V", help="run the doubling check on these classes")
    s = sub.add_parser("metabolizers", help="algebraic sliceness and metabolizers")
    s.add_argument("knot")
    s.add_argument("--bound", type=int, default=10, help="coordinate bound for the lattice search")
    s = sub.add_parser("family", help="members of the J_n or iterated Bing family")
    s.add_argument("family", choices=("Jn", "BD"))
    s.add_argument("n", type=int)
    s.add_argument("knot")
    s = sub.add_parser("depth", help="derived-series depth of a free-group word")
    s.add_argument("word")
    s.add_argument("--kmax", type=int, default=3)
    s = sub.add_parser("catalog", help="list, show or add catalog entries")
    csub = s.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    c = csub.add_parser("show")
    c.add_argument("name")
    c = csub.add_parser("add")
    c.add_argument("file")
    c.add_argument("--replace", action="store_true", help="overwrite an entry with the same name")
    return p


_HANDLERS = {
    "invariants": cmd_invariants,
    "obstruct": cmd_obstruct,
    "sigfn": cmd_sigfn,
    "rho0": cmd_rho0,
    "blanchfield": cmd_blanchfield,
    "metabolizers": cmd_metabolizers,
    "family": cmd_family,
    "depth": cmd_depth,
    "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.precision < 1:
            raise ParseError("--precision must be a positive number of bits")
        cat = load_catalog(args.catalog) if args.command != "depth" else None
        if cat is not None:
            cat.path = catalog_path(args.catalog)
        report = _HANDLERS[args.command](args, cat)
    except ConcordError as e:
        print(f"concord: error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"concord: error: {e}", file=sys.stderr)
        return 1
    if isinstance(report, str):
        sys.stdout.write(report)
    elif args.json:
        sys.stdout.write(canonical_json(report))
    else:
        print("\n".join(_render(report)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
