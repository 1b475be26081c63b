"""Line-oriented structure files.

Every file starts with ``kind: K`` and continues with ``key: tokens``
lines; ``#`` starts a comment.  Parsing yields a :class:`Document`
holding the raw tables exactly as written, so that files describing
invalid structures can still be loaded and reported on.  Serialization
is canonical: header lines first, then body lines sorted.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .algebra import FrobAlgebra, HStarAlgebra, MulCandidate, as_frobenius, as_hstar, find_unit
from .errors import ConversionError, ParseError, PreconditionError
from .finrel import Rel
from .structures import Groupoid, Semigroupoid

ALGEBRA_KINDS = ("relation", "frobenius", "hstar")
STRUCTURE_KINDS = ("semigroupoid", "groupoid")
KINDS = ALGEBRA_KINDS + STRUCTURE_KINDS + ("relmorphism",)

ALLOWED_KEYS = {
    "relation": {"elements", "m"},
    "frobenius": {"elements", "m", "unit"},
    "hstar": {"elements", "m"},
    "semigroupoid": {"objects", "mor", "comp"},
    "groupoid": {"objects", "mor", "comp", "id", "inv"},
    "relmorphism": {"source", "target", "pair"},
}
SINGLE_KEYS = {"elements", "unit", "objects", "source", "target"}

EXTENSIONS = {"relation": ".rel", "frobenius": ".frob", "hstar": ".hstar", "semigroupoid": ".sgpd",
              "groupoid": ".gpd", "relmorphism": ".mor"}


@dataclass(frozen=True)
class Document:
    """The raw content of one structure file."""

    kind: str
    elements: tuple = ()
    triples: tuple = ()
    unit: tuple | None = None
    objects: tuple = ()
    mor: Mapping = field(default_factory=dict)
    comp: Mapping = field(default_factory=dict)
    ident: Mapping = field(default_factory=dict)
    inv: Mapping | None = None
    source: str | None = None
    target: str | None = None
    pairs: tuple = ()
    source_doc: "Document | None" = None
    target_doc: "Document | None" = None


@dataclass(frozen=True)
class _Line:
    number: int
    key: str
    key_col: int
    tokens: tuple  # (text, column)


# -- lexing --------------------------------------------------------------------

def _lex(text: str) -> list[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        key_col = len(body) - len(body.lstrip()) + 1
        head, sep, rest = body.partition(":")
        key = head.strip()
        if not sep or not key or any(ch.isspace() for ch in key):
            raise ParseError("malformed line", number, key_col, expected="'key: value'")
        tokens = []
        offset = len(head) + 1
        col = 0
        for piece in rest.split():
            col = rest.index(piece, col)
            tokens.append((piece, offset + col + 1))
            col += len(piece)
        lines.append(_Line(number, key, key_col, tuple(tokens)))
    return lines


def _expect_arrow(line: _Line, before: int, after: int) -> tuple[list, list]:
    toks = line.tokens
    if len(toks) != before + 1 + after or toks[before][0] != "->":
        col = toks[before][1] if len(toks) > before else (toks[-1][1] if toks else line.key_col)
        shape = " ".join(["x"] * before + ["->"] + ["z"] * after)
        raise ParseError(f"malformed '{line.key}' line", line.number, col, expected=shape)
    return list(toks[:before]), list(toks[before + 1:])


def _expect_count(line: _Line, count: int, shape: str) -> list:
    if len(line.tokens) != count:
        col = line.tokens[count][1] if len(line.tokens) > count else (
            line.tokens[-1][1] if line.tokens else line.key_col)
        raise ParseError(f"malformed '{line.key}' line", line.number, col, expected=shape)
    return list(line.tokens)


def _declare(line: _Line, what: str) -> tuple:
    seen: dict[str, int] = {}
    for tok, col in line.tokens:
        if tok == "->":
            raise ParseError(f"unexpected '->' in {what} list", line.number, col, expected="atom")
        if tok in seen:
            raise ParseError(f"duplicate atom {tok!r}", line.number, col, expected="distinct atoms")
        seen[tok] = col
    return tuple(tok for tok, _ in line.tokens)


def _known(tok: tuple, declared, line: _Line, what: str) -> str:
    if tok[0] not in declared:
        raise ParseError(f"unknown {what} {tok[0]!r}", line.number, tok[1], expected=f"declared {what}")
    return tok[0]


# -- parsing -------------------------------------------------------------------

def parse(text: str, base_dir: str | None = None) -> Document:
    """Parse a structure file.

    ``relmorphism`` files reference other files by path; these are resolved
    against ``base_dir`` and loaded when it is given, and the ``pair`` atoms
    are then checked against the two carriers.
    """
    lines = _lex(text)
    if not lines:
        raise ParseError("empty file", 1, 1, expected="'kind:' line")
    first = lines[0]
    if first.key != "kind":
        raise ParseError("file must start with a kind line", first.number, first.key_col, expected="'kind:'")
    if len(first.tokens) != 1 or first.tokens[0][0] not in KINDS:
        col = first.tokens[0][1] if first.tokens else first.key_col
        raise ParseError("unknown kind", first.number, col, expected=" | ".join(KINDS))
    kind = first.tokens[0][0]

    by_key: dict[str, list[_Line]] = {}
    for line in lines[1:]:
        if line.key == "kind":
            raise ParseError("second kind line", line.number, line.key_col, expected="one 'kind:' line")
        if line.key not in ALLOWED_KEYS[kind]:
            raise ParseError(f"kind mismatch: '{line.key}' is not allowed in a {kind} file",
                             line.number, line.key_col, expected=" | ".join(sorted(ALLOWED_KEYS[kind])))
        if line.key in SINGLE_KEYS and line.key in by_key:
            raise ParseError(f"repeated '{line.key}' line", line.number, line.key_col,
                             expected=f"one '{line.key}:' line")
        by_key.setdefault(line.key, []).append(line)

    if kind in ALGEBRA_KINDS:
        return _parse_algebra(kind, by_key, first)
    if kind in STRUCTURE_KINDS:
        return _parse_structure(kind, by_key, first)
    return _parse_relmorphism(by_key, first, base_dir)


def _require(by_key: dict, key: str, first: _Line) -> _Line:
    if key not in by_key:
        raise ParseError(f"missing '{key}' line", first.number, first.key_col, expected=f"'{key}:'")
    return by_key[key][0]


def _parse_algebra(kind: str, by_key: dict, first: _Line) -> Document:
    decl = _require(by_key, "elements", first)
    elements = _declare(decl, "element")
    if not elements:
        raise ParseError("no elements declared", decl.number, decl.key_col, expected="at least one atom")
    atoms = set(elements)
    triples: set[tuple] = set()
    for line in by_key.get("m", []):
        left, right = _expect_arrow(line, 2, 1)
        t = tuple(_known(tok, atoms, line, "element") for tok in left + right)
        if t in triples:
            raise ParseError(f"duplicate triple {' '.join(t)}", line.number, line.key_col, expected="distinct triples")
        triples.add(t)
    unit = None
    if "unit" in by_key:
        line = by_key["unit"][0]
        unit = tuple(sorted(_known(tok, atoms, line, "element") for tok in line.tokens))
        _declare(line, "unit")
    return Document(kind, elements=tuple(sorted(elements)), triples=tuple(sorted(triples)), unit=unit)


def _parse_structure(kind: str, by_key: dict, first: _Line) -> Document:
    decl = _require(by_key, "objects", first)
    objects = _declare(decl, "object")
    obs = set(objects)
    mor: dict[str, tuple] = {}
    for line in by_key.get("mor", []):
        f, x, y = _expect_count(line, 3, "f x y")
        if f[0] in mor:
            raise ParseError(f"duplicate atom {f[0]!r}", line.number, f[1], expected="distinct morphisms")
        mor[f[0]] = (_known(x, obs, line, "object"), _known(y, obs, line, "object"))
    if not mor:
        raise ParseError("no morphisms declared", first.number, first.key_col, expected="'mor:' lines")
    used = {x for pair in mor.values() for x in pair}
    for tok, col in decl.tokens:
        if tok not in used:
            raise ParseError(f"object {tok!r} has no incident morphism", decl.number, col,
                             expected="objects that are a source or target")
    comp: dict[tuple, str] = {}
    for line in by_key.get("comp", []):
        left, right = _expect_arrow(line, 2, 1)
        g, f = (_known(tok, mor, line, "morphism") for tok in left)
        h = _known(right[0], mor, line, "morphism")
        if (g, f) in comp:
            raise ParseError(f"duplicate composite {g} {f}", line.number, line.key_col,
                             expected="one 'comp:' line per pair")
        comp[(g, f)] = h
    ident: dict[str, str] = {}
    inv = None
    if kind == "groupoid":
        for line in by_key.get("id", []):
            left, right = _expect_arrow(line, 1, 1)
            x = _known(left[0], obs, line, "object")
            if x in ident:
                raise ParseError(f"duplicate identity for {x!r}", line.number, left[0][1],
                                 expected="one 'id:' line per object")
            ident[x] = _known(right[0], mor, line, "morphism")
        for tok, col in decl.tokens:
            if tok not in ident:
                raise ParseError(f"object {tok!r} has no identity", decl.number, col, expected=f"'id: {tok} -> e'")
        if "inv" in by_key:
            inv = {}
            for line in by_key["inv"]:
                left, right = _expect_arrow(line, 1, 1)
                f = _known(left[0], mor, line, "morphism")
                if f in inv:
                    raise ParseError(f"duplicate inverse for {f!r}", line.number, left[0][1],
                                     expected="one 'inv:' line per morphism")
                inv[f] = _known(right[0], mor, line, "morphism")
            missing = sorted(set(mor) - set(inv))
            if missing:
                line = by_key["inv"][-1]
                raise ParseError(f"no inverse given for {missing[0]!r}", line.number, line.key_col,
                                 expected="'inv:' for every morphism or none")
    return Document(kind, objects=tuple(sorted(objects)), mor=MappingProxyType(mor),
                    comp=MappingProxyType(comp), ident=MappingProxyType(ident),
                    inv=None if inv is None else MappingProxyType(inv))


def _parse_relmorphism(by_key: dict, first: _Line, base_dir: str | None) -> Document:
    paths = {}
    for key in ("source", "target"):
        line = _require(by_key, key, first)
        (tok,) = _expect_count(line, 1, "<path>")
        paths[key] = (tok[0], line)
    docs = {}
    if base_dir is not None:
        for key, (path, line) in paths.items():
            full = os.path.join(base_dir, path)
            try:
                doc = load(full)
            except OSError as exc:
                raise ParseError(f"cannot read {key} file: {exc.strerror}", line.number, line.tokens[0][1],
                                 expected="readable path")
            except ParseError as exc:
                raise ParseError(f"{key} file {path}: {exc.message}", line.number, line.tokens[0][1],
                                 expected=exc.expected)
            if doc.kind not in ("frobenius", "hstar"):
                raise ParseError(f"{key} must be a frobenius or hstar file, got {doc.kind}", line.number,
                                 line.tokens[0][1], expected="frobenius | hstar")
            docs[key] = doc
    pairs = set()
    for line in by_key.get("pair", []):
        a, b = _expect_count(line, 2, "a b")
        if docs:
            _known(a, set(docs["source"].elements), line, "source element")
            _known(b, set(docs["target"].elements), line, "target element")
        if (a[0], b[0]) in pairs:
            raise ParseError(f"duplicate pair {a[0]} {b[0]}", line.number, line.key_col, expected="distinct pairs")
        pairs.add((a[0], b[0]))
    return Document("relmorphism", source=paths["source"][0], target=paths["target"][0],
                    pairs=tuple(sorted(pairs)), source_doc=docs.get("source"), target_doc=docs.get("target"))


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse(text, base_dir=os.path.dirname(os.path.abspath(path)))


# -- serialization -------------------------------------------------------------

def _check_atom(a: str) -> str:
    if not a or any(ch.isspace() for ch in a) or "#" in a or ":" in a or a == "->":
        raise ValueError(f"atom {a!r} cannot be written to a structure file")
    return a


def _join(*parts) -> str:
    return " ".join(_check_atom(p) for p in parts)


def serialize_document(doc: Document) -> str:
    out = [f"kind: {doc.kind}"]
    if doc.kind in ALGEBRA_KINDS:
        out.append(f"elements: {_join(*sorted(doc.elements))}")
        if doc.unit is not None:
            out.append(f"unit: {_join(*sorted(doc.unit))}")
        out.extend(f"m: {_join(x, y)} -> {_join(z)}" for x, y, z in sorted(doc.triples))
    elif doc.kind in STRUCTURE_KINDS:
        out.append(f"objects: {_join(*sorted(doc.objects))}")
        out.extend(f"mor: {_join(f, *doc.mor[f])}" for f in sorted(doc.mor))
        out.extend(f"comp: {_join(g, f)} -> {_join(doc.comp[(g, f)])}" for g, f in sorted(doc.comp))
        if doc.kind == "groupoid":
            out.extend(f"id: {_join(x)} -> {_join(doc.ident[x])}" for x in sorted(doc.ident))
            if doc.inv is not None:
                out.extend(f"inv: {_join(f)} -> {_join(doc.inv[f])}" for f in sorted(doc.inv))
    else:
        out.append(f"source: {_join(doc.source)}")
        out.append(f"target: {_join(doc.target)}")
        out.extend(f"pair: {_join(a, b)}" for a, b in sorted(doc.pairs))
    return "\n".join(out) + "\n"


def to_document(obj, kind: str | None = None) -> Document:
    """The canonical document of an in-memory structure."""
    if isinstance(obj, Document):
        return obj
    if isinstance(obj, FrobAlgebra):
        return Document(kind or "frobenius", elements=obj.base.atoms, triples=tuple(obj.base.triples()),
                        unit=tuple(sorted(obj.unit_set)) if (kind or "frobenius") == "frobenius" else None)
    if isinstance(obj, HStarAlgebra):
        return Document(kind or "hstar", elements=obj.base.atoms, triples=tuple(obj.base.triples()))
    if isinstance(obj, MulCandidate):
        return Document(kind or "relation", elements=obj.atoms, triples=tuple(obj.triples()))
    if isinstance(obj, Groupoid):
        s = obj.base
        return Document("groupoid", objects=s.objects.elements,
                        mor={f: (s.src[f], s.tgt[f]) for f in s.morphisms}, comp=dict(s.comp),
                        ident=dict(obj.ident), inv=dict(obj.inv))
    if isinstance(obj, Semigroupoid):
        return Document("semigroupoid", objects=obj.objects.elements,
                        mor={f: (obj.src[f], obj.tgt[f]) for f in obj.morphisms}, comp=dict(obj.comp))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj, kind: str | None = None) -> str:
    return serialize_document(to_document(obj, kind))


# -- documents to structures -------------------------------------------------------

def candidate(doc: Document) -> MulCandidate:
    return MulCandidate.from_triples(doc.elements, doc.triples)


def semigroupoid(doc: Document) -> Semigroupoid:
    return Semigroupoid(doc.objects, list(doc.mor), {f: xy[0] for f, xy in doc.mor.items()},
                        {f: xy[1] for f, xy in doc.mor.items()}, dict(doc.comp))


def derive_inverses(s: Semigroupoid, ident: Mapping) -> tuple[dict, str | None]:
    """Two-sided inverses relative to ``ident``; the second value names a morphism without one."""
    inv = {}
    for f in s.morphisms:
        hits = [g for g in s.morphisms
                if s.comp.get((g, f)) == ident[s.src[f]] and s.comp.get((f, g)) == ident[s.tgt[f]]]
        if not hits:
            return inv, f
        inv[f] = hits[0]
    return inv, None


def groupoid(doc: Document) -> Groupoid:
    """The groupoid of a groupoid document, deriving inverses when none are given."""
    s = semigroupoid(doc)
    if doc.inv is not None:
        return Groupoid(s, dict(doc.ident), dict(doc.inv))
    inv, missing = derive_inverses(s, doc.ident)
    if missing is not None:
        raise PreconditionError("morphism has no two-sided inverse", missing)
    return Groupoid(s, dict(doc.ident), inv)


def algebra(doc: Document):
    """The validated algebra of a frobenius or hstar document."""
    c = candidate(doc)
    if doc.kind == "frobenius":
        return as_frobenius(c, unit_hint=doc.unit)
    if doc.kind == "hstar":
        return as_hstar(c)
    raise ConversionError(f"a {doc.kind} file does not describe an algebra")


def relmorphism(doc: Document):
    """The validated relation between the two referenced algebras."""
    from .morphisms import RelMorphism

    if doc.source_doc is None or doc.target_doc is None:
        raise PreconditionError("relmorphism document was parsed without resolving its paths")
    src, tgt = algebra(doc.source_doc), algebra(doc.target_doc)
    if isinstance(src, FrobAlgebra) != isinstance(tgt, FrobAlgebra):
        src = src if isinstance(src, HStarAlgebra) else HStarAlgebra(src.base)
        tgt = tgt if isinstance(tgt, HStarAlgebra) else HStarAlgebra(tgt.base)
    return RelMorphism(src, tgt, Rel(src.carrier, tgt.carrier, doc.pairs))


def structure(doc: Document):
    """The in-memory structure of a document, validated for its kind."""
    if doc.kind == "relation":
        return candidate(doc)
    if doc.kind in ("frobenius", "hstar"):
        return algebra(doc)
    if doc.kind == "semigroupoid":
        return semigroupoid(doc)
    if doc.kind == "groupoid":
        return groupoid(doc)
    return relmorphism(doc)


def computed_unit(doc: Document) -> frozenset | None:
    return find_unit(candidate(doc))
