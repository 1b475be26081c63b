"""Finite semigroupoids and groupoids as explicit tables.

Composition is keyed ``(g, f)`` and means "g after f"; it is defined
exactly when ``src(g) == tgt(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from types import MappingProxyType
from typing import Iterable, Mapping

from . import finrel as fr
from .errors import InvariantViolation, PreconditionError
from .finrel import FinSet, Rel


def _frozen(mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


class Semigroupoid:
    """Objects, morphisms, total ``src``/``tgt`` and a partial composition table.

    Construction only checks that the tables mention known atoms; the
    axioms are checked by :func:`validate_semigroupoid`.
    """

    __slots__ = ("objects", "morphisms", "src", "tgt", "comp", "_key")

    def __init__(self, objects: Iterable[str], morphisms: Iterable[str], src: Mapping, tgt: Mapping,
                 comp: Mapping):
        self.objects = objects if isinstance(objects, FinSet) else FinSet(objects)
        self.morphisms = morphisms if isinstance(morphisms, FinSet) else FinSet(morphisms)
        for name, table in (("src", src), ("tgt", tgt)):
            if set(table) != set(self.morphisms.elements):
                missing = sorted(set(self.morphisms.elements) - set(table))
                raise PreconditionError(f"{name} must be total on morphisms", missing or sorted(set(table)))
            bad = [f for f, x in table.items() if x not in self.objects]
            if bad:
                raise PreconditionError(f"{name} refers to unknown objects", bad)
        for (g, f), h in comp.items():
            for atom in (g, f, h):
                if atom not in self.morphisms:
                    raise PreconditionError("composition refers to an unknown morphism", atom)
        self.src = _frozen(src)
        self.tgt = _frozen(tgt)
        self.comp = _frozen(comp)
        self._key = None

    @classmethod
    def one_object(cls, morphisms: Iterable[str], table: Mapping, obj: str = "*") -> "Semigroupoid":
        mors = list(morphisms)
        return cls([obj], mors, {f: obj for f in mors}, {f: obj for f in mors}, table)

    def compose(self, g: str, f: str) -> str | None:
        return self.comp.get((g, f))

    def composable(self, g: str, f: str) -> bool:
        return self.src[g] == self.tgt[f]

    def composable_pairs(self) -> list[tuple[str, str]]:
        M = self.morphisms.elements
        return [(g, f) for g in M for f in M if self.src[g] == self.tgt[f]]

    def hom(self, x: str, y: str) -> list[str]:
        return [f for f in self.morphisms if self.src[f] == x and self.tgt[f] == y]

    def idempotents(self) -> list[str]:
        return [f for f in self.morphisms if self.comp.get((f, f)) == f]

    @property
    def key(self):
        if self._key is None:
            self._key = (self.objects.elements, self.morphisms.elements,
                         tuple(sorted(self.src.items())), tuple(sorted(self.tgt.items())),
                         tuple(sorted(self.comp.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Semigroupoid) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return (f"Semigroupoid(objects={list(self.objects)}, morphisms={list(self.morphisms)}, "
                f"comp={len(self.comp)} entries)")

    def relabel(self, objects: Mapping | None = None, morphisms: Mapping | None = None) -> "Semigroupoid":
        ob = objects or {x: x for x in self.objects}
        mo = morphisms or {f: f for f in self.morphisms}
        return Semigroupoid([ob[x] for x in self.objects], [mo[f] for f in self.morphisms],
                            {mo[f]: ob[x] for f, x in self.src.items()},
                            {mo[f]: ob[x] for f, x in self.tgt.items()},
                            {(mo[g], mo[f]): mo[h] for (g, f), h in self.comp.items()})

    # relational views
    def src_rel(self) -> Rel:
        return fr.graph_of(dict(self.src), self.morphisms, self.objects)

    def tgt_rel(self) -> Rel:
        return fr.graph_of(dict(self.tgt), self.morphisms, self.objects)

    def comp_rel(self) -> Rel:
        M = self.morphisms
        return Rel(fr.product_set(M, M), M, (((g, f), h) for (g, f), h in self.comp.items()))


class Groupoid:
    """A semigroupoid together with identities ``ident`` and inverses ``inv``."""

    __slots__ = ("base", "ident", "inv")

    def __init__(self, base: Semigroupoid, ident: Mapping, inv: Mapping):
        if set(ident) != set(base.objects.elements):
            raise PreconditionError("ident must be total on objects")
        if set(inv) != set(base.morphisms.elements):
            raise PreconditionError("inv must be total on morphisms")
        for atom in list(ident.values()) + list(inv.values()):
            if atom not in base.morphisms:
                raise PreconditionError("unknown morphism in ident/inv", atom)
        self.base = base
        self.ident = _frozen(ident)
        self.inv = _frozen(inv)

    objects = property(lambda self: self.base.objects)
    morphisms = property(lambda self: self.base.morphisms)
    src = property(lambda self: self.base.src)
    tgt = property(lambda self: self.base.tgt)
    comp = property(lambda self: self.base.comp)

    def compose(self, g, f):
        return self.base.compose(g, f)

    def identities(self) -> frozenset:
        return frozenset(self.ident.values())

    @property
    def key(self):
        return (self.base.key, tuple(sorted(self.ident.items())), tuple(sorted(self.inv.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, Groupoid) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Groupoid(objects={list(self.objects)}, morphisms={list(self.morphisms)})"

    def relabel(self, objects: Mapping | None = None, morphisms: Mapping | None = None) -> "Groupoid":
        ob = objects or {x: x for x in self.objects}
        mo = morphisms or {f: f for f in self.morphisms}
        return Groupoid(self.base.relabel(ob, mo), {ob[x]: mo[e] for x, e in self.ident.items()},
                        {mo[f]: mo[g] for f, g in self.inv.items()})

    def ident_rel(self) -> Rel:
        return fr.graph_of(dict(self.ident), self.objects, self.morphisms)

    def inv_rel(self) -> Rel:
        return fr.graph_of(dict(self.inv), self.morphisms, self.morphisms)


# -- validation reports ------------------------------------------------------

@dataclass(frozen=True)
class AxiomResult:
    id: str
    passed: bool
    witness: object = None

    def as_dict(self) -> dict:
        out = {"id": self.id, "passed": self.passed}
        if not self.passed and self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class ValidationReport:
    entries: list[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def add(self, id: str, witness=None) -> None:
        self.entries.append(AxiomResult(id, witness is None, witness))

    def failures(self) -> list[AxiomResult]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, id: str) -> AxiomResult:
        for e in self.entries:
            if e.id == id:
                return e
        raise KeyError(id)

    def as_list(self) -> list[dict]:
        return [e.as_dict() for e in self.entries]


def _first(iterable):
    return next(iter(iterable), None)


def validate_semigroupoid(s: Semigroupoid) -> ValidationReport:
    rep = ValidationReport()
    M = s.morphisms.elements
    rep.add("composability", _first(
        [g, f] for g in M for f in M if ((g, f) in s.comp) != (s.src[g] == s.tgt[f])))
    rep.add("source-target", _first(
        [g, f] for (g, f), h in s.comp.items() if s.src[h] != s.src[f] or s.tgt[h] != s.tgt[g]))

    def assoc_witness():
        for h in M:
            for g in M:
                hg = s.comp.get((h, g))
                for f in M:
                    gf = s.comp.get((g, f))
                    left = None if hg is None else s.comp.get((hg, f))
                    right = None if gf is None else s.comp.get((h, gf))
                    if left != right:
                        return [h, g, f]
        return None

    rep.add("associativity", assoc_witness())
    used = set(s.src.values()) | set(s.tgt.values())
    rep.add("jointly-epic", _first(x for x in s.objects if x not in used))
    return rep


def inverse_diagrams(g: Groupoid) -> tuple[bool, bool]:
    """The relational inverse laws ``m.(1 x i).D = e.t`` and ``m.(i x 1).D = e.s``."""
    M = g.morphisms
    one = fr.identity(M)
    m, i, e = g.base.comp_rel(), g.inv_rel(), g.ident_rel()
    d = fr.diagonal(M)
    right = fr.compose_all(m, fr.product(one, i), d) == fr.compose(e, g.base.tgt_rel())
    left = fr.compose_all(m, fr.product(i, one), d) == fr.compose(e, g.base.src_rel())
    return right, left


def validate_groupoid(g: Groupoid) -> ValidationReport:
    rep = validate_semigroupoid(g.base)
    s = g.base
    rep.add("identity-typing", _first(
        x for x, e in g.ident.items() if s.src[e] != x or s.tgt[e] != x))
    unit_fail = None
    for f in s.morphisms:
        if s.comp.get((f, g.ident[s.src[f]])) != f or s.comp.get((g.ident[s.tgt[f]], f)) != f:
            unit_fail = f
            break
    rep.add("unit-laws", unit_fail)
    inv_fail = None
    for f in s.morphisms:
        fi = g.inv[f]
        if s.comp.get((fi, f)) != g.ident[s.src[f]] or s.comp.get((f, fi)) != g.ident[s.tgt[f]]:
            inv_fail = f
            break
    rep.add("inverse-law", inv_fail)
    diagram_ok = all(inverse_diagrams(g))
    if diagram_ok != (inv_fail is None):
        raise InvariantViolation("relational and elementwise inverse laws disagree", inv_fail)
    rep.add("inverse-diagram", None if diagram_ok else inv_fail)
    return rep


def _require_valid(s: Semigroupoid) -> None:
    rep = validate_semigroupoid(s)
    if not rep.passed:
        bad = rep.failures()[0]
        raise PreconditionError(f"invalid semigroupoid: {bad.id} fails", bad.witness)


def _base(s) -> Semigroupoid:
    return s.base if isinstance(s, Groupoid) else s


# -- regularity and cancellativity -------------------------------------------

def pseudoinverse_table(s: Semigroupoid) -> dict[str, frozenset]:
    """For each ``f`` the set of ``f*`` with ``ff*f = f`` and ``f*ff* = f*``."""
    c = s.comp
    out = {}
    for f in s.morphisms:
        found = []
        for x in s.hom(s.tgt[f], s.src[f]):
            fx = c.get((f, x))
            xf = c.get((x, f))
            if fx is not None and xf is not None and c.get((fx, f)) == f and c.get((xf, x)) == x:
                found.append(x)
        out[f] = frozenset(found)
    return out


def is_regular(s) -> tuple[bool, dict[str, frozenset]]:
    s = _base(s)
    _require_valid(s)
    table = pseudoinverse_table(s)
    return all(table.values()), table


def _lc_scan(s: Semigroupoid, mirrored: bool):
    c = s.comp
    table = pseudoinverse_table(s)
    M = s.morphisms.elements
    for f in M:
        for g in M:
            for h in M:
                for hs in sorted(table[h]):
                    # mirrored form swaps the roles of h and h*
                    a, b = (hs, h) if mirrored else (h, hs)
                    fa = c.get((f, a))
                    if fa is not None and c.get((fa, b)) is not None and c.get((fa, b)) == c.get((g, b)):
                        if fa != g:
                            return {"f": f, "g": g, "h": h, "h*": hs, "clause": "right"}
                    ba = c.get((b, a))
                    if ba is not None and c.get((ba, f)) is not None and c.get((ba, f)) == c.get((b, g)):
                        if c.get((a, f)) != g:
                            return {"f": f, "g": g, "h": h, "h*": hs, "clause": "left"}
    return None


def lc_violation(s: Semigroupoid, f: str, g: str, h: str, hs: str) -> str | None:
    """Which cancellation clause (if any) the quadruple ``(f, g, h, h*)`` violates."""
    c = s.comp
    fh = c.get((f, h))
    if fh is not None and c.get((fh, hs)) is not None and c.get((fh, hs)) == c.get((g, hs)) and fh != g:
        return "right"
    hsh = c.get((hs, h))
    if hsh is not None and c.get((hsh, f)) is not None and c.get((hsh, f)) == c.get((hs, g)) \
            and c.get((h, f)) != g:
        return "left"
    return None


def is_locally_cancellative(s) -> tuple[bool, dict | None]:
    """``fhh* = gh* => fh = g`` and ``h*hf = h*g => hf = g`` for all pseudoinverses ``h*``.

    Hypotheses require both sides defined; conclusions require ``fh``
    (resp. ``hf``) defined and equal to ``g``.
    """
    s = _base(s)
    _require_valid(s)
    w = _lc_scan(s, mirrored=False)
    return w is None, w


def is_lc_mirrored(s) -> tuple[bool, dict | None]:
    """The same cancellation with ``h`` and ``h*`` exchanged: ``fh*h = gh => fh* = g``."""
    s = _base(s)
    _require_valid(s)
    w = _lc_scan(s, mirrored=True)
    return w is None, w


def check_lc_symmetric_equivalence(s) -> bool:
    """True iff the mirrored form holds exactly when local cancellativity does."""
    s = _base(s)
    if not is_regular(s)[0]:
        raise PreconditionError("mirrored cancellation is only compared on regular semigroupoids")
    return is_locally_cancellative(s)[0] == is_lc_mirrored(s)[0]


def is_monic_epic(s) -> bool:
    """Every morphism is monic (``hf = hg => f = g``) and epic (``fh = gh => f = g``)."""
    s = _base(s)
    seen_left: dict = {}
    seen_right: dict = {}
    for (g, f), h in s.comp.items():
        if seen_left.setdefault((g, h), f) != f:
            return False
        if seen_right.setdefault((f, h), g) != g:
            return False
    return True


def local_identities(s: Semigroupoid) -> dict[str, str]:
    """Objects that carry a two-sided neutral endomorphism, mapped to it."""
    out = {}
    for x in s.objects:
        for e in s.hom(x, x):
            if all(s.comp.get((f, e)) == f for f in s.morphisms if s.src[f] == x) and \
                    all(s.comp.get((e, f)) == f for f in s.morphisms if s.tgt[f] == x):
                out[x] = e
                break
    return out


def promote_to_groupoid(s) -> Groupoid | None:
    """The groupoid structure of a locally cancellative regular semigroupoid with identities."""
    s = _base(s)
    regular, table = is_regular(s)
    if not regular:
        raise PreconditionError("promotion needs a regular semigroupoid")
    lc, w = is_locally_cancellative(s)
    if not lc:
        raise PreconditionError("promotion needs a locally cancellative semigroupoid", w)
    ident = local_identities(s)
    if len(ident) != len(s.objects):
        return None
    inv = {}
    for f, stars in table.items():
        if len(stars) != 1:
            raise InvariantViolation("pseudoinverse is not unique once identities exist", (f, sorted(stars)))
        inv[f] = next(iter(stars))
    g = Groupoid(s, ident, inv)
    rep = validate_groupoid(g)
    if not rep.passed:
        raise InvariantViolation("promoted structure is not a groupoid", rep.failures()[0])
    return g


def forget(g: Groupoid) -> Semigroupoid:
    return g.base


def is_subsemigroupoid(sub: Semigroupoid, s: Semigroupoid) -> bool:
    if not set(sub.objects) <= set(s.objects) or not set(sub.morphisms) <= set(s.morphisms):
        return False
    for f in sub.morphisms:
        if sub.src[f] != s.src[f] or sub.tgt[f] != s.tgt[f]:
            return False
    return all(s.comp.get(k) == h for k, h in sub.comp.items()) and \
        all(k in sub.comp for k in sub.composable_pairs())


def is_subgroupoid(sub: Groupoid, g: Groupoid) -> bool:
    return is_subsemigroupoid(sub.base, g.base) and \
        all(g.ident[x] == e for x, e in sub.ident.items()) and \
        all(g.inv[f] == fi for f, fi in sub.inv.items())


# -- products and standard examples --------------------------------------------

def pair_atom(a: str, b: str) -> str:
    return fr.render_element((a, b))


def product_semigroupoid(a: Semigroupoid, b: Semigroupoid) -> Semigroupoid:
    objs = [pair_atom(x, y) for x in a.objects for y in b.objects]
    mors = [pair_atom(f, g) for f in a.morphisms for g in b.morphisms]
    src = {pair_atom(f, g): pair_atom(a.src[f], b.src[g]) for f in a.morphisms for g in b.morphisms}
    tgt = {pair_atom(f, g): pair_atom(a.tgt[f], b.tgt[g]) for f in a.morphisms for g in b.morphisms}
    comp = {}
    for (g1, f1), h1 in a.comp.items():
        for (g2, f2), h2 in b.comp.items():
            comp[(pair_atom(g1, g2), pair_atom(f1, f2))] = pair_atom(h1, h2)
    return Semigroupoid(objs, mors, src, tgt, comp)


def product_groupoid(a: Groupoid, b: Groupoid) -> Groupoid:
    base = product_semigroupoid(a.base, b.base)
    ident = {pair_atom(x, y): pair_atom(a.ident[x], b.ident[y]) for x in a.objects for y in b.objects}
    inv = {pair_atom(f, g): pair_atom(a.inv[f], b.inv[g]) for f in a.morphisms for g in b.morphisms}
    return Groupoid(base, ident, inv)


def discrete_groupoid(objects: Iterable[str]) -> Groupoid:
    """One identity per object; morphism atoms coincide with object atoms."""
    obs = list(objects)
    base = Semigroupoid(obs, obs, {x: x for x in obs}, {x: x for x in obs}, {(x, x): x for x in obs})
    return Groupoid(base, {x: x for x in obs}, {x: x for x in obs})


def pair_groupoid(objects: Iterable[str]) -> Groupoid:
    """Exactly one morphism ``xy : x -> y`` between any two objects."""
    obs = list(objects)
    mor = {(x, y): f"{x}{y}" for x in obs for y in obs}
    base = Semigroupoid(obs, mor.values(), {m: x for (x, _), m in mor.items()},
                        {m: y for (_, y), m in mor.items()},
                        {(mor[y, z], mor[x, y]): mor[x, z] for x in obs for y in obs for z in obs})
    return Groupoid(base, {x: mor[x, x] for x in obs}, {m: mor[y, x] for (x, y), m in mor.items()})


def cyclic_group(n: int, names: Iterable[str] | None = None, obj: str = "*") -> Groupoid:
    """``Z/n`` as a one-object groupoid; ``names[0]`` is the identity."""
    atoms = list(names) if names is not None else [f"g{k}" for k in range(n)]
    if len(atoms) != n:
        raise ValueError("need one name per element")
    table = {(atoms[i], atoms[j]): atoms[(i + j) % n] for i, j in cartesian(range(n), repeat=2)}
    base = Semigroupoid.one_object(atoms, table, obj)
    return Groupoid(base, {obj: atoms[0]}, {atoms[i]: atoms[(-i) % n] for i in range(n)})
