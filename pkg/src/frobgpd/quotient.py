"""Congruences, quotient semigroupoids and the groupoid reflection ``F``.

Quotient morphisms are named ``[rep]`` where ``rep`` is the least member
of the class, so quotients computed along different routes can be
compared atom for atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import FrobAlgebra, HStarAlgebra, MulCandidate, as_frobenius
from .correspond import groupoid_to_frob, hstar_to_semigroupoid
from .errors import InvariantViolation, PreconditionError
from .morphisms import Functor, MultiFunctor, SubMorphism, validate_functor, validate_multifunctor, \
    validate_submorphism
from .structures import (Groupoid, Semigroupoid, ValidationReport, is_locally_cancellative, is_regular,
                         is_subgroupoid, pair_atom, product_groupoid, validate_groupoid, validate_semigroupoid)


class _UnionFind:
    def __init__(self, atoms: Iterable[str]):
        self.parent = {a: a for a in atoms}

    def find(self, a: str) -> str:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the least atom as root so roots are class representatives
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self) -> tuple[frozenset, ...]:
        out: dict = {}
        for a in self.parent:
            out.setdefault(self.find(a), set()).add(a)
        return tuple(sorted((frozenset(c) for c in out.values()), key=min))


def _close(atoms: Iterable[str], comp: Mapping, generators: Iterable[tuple]) -> tuple[frozenset, ...]:
    """Smallest equivalence containing ``generators`` and compatible with ``comp``."""
    uf = _UnionFind(atoms)
    for a, b in generators:
        uf.union(a, b)
    items = list(comp.items())
    changed = True
    while changed:
        changed = False
        for (g, f), h in items:
            for (g2, f2), h2 in items:
                if uf.find(g) == uf.find(g2) and uf.find(f) == uf.find(f2) and uf.union(h, h2):
                    changed = True
    return uf.classes()


@dataclass(frozen=True)
class Congruence:
    over: Semigroupoid
    classes: tuple

    def class_of(self, f: str) -> frozenset:
        for c in self.classes:
            if f in c:
                return c
        raise KeyError(f)

    def rep(self, f: str) -> str:
        return min(self.class_of(f))

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.classes)


def class_atom(members: Iterable[str]) -> str:
    return f"[{min(members)}]"


def check_congruence(c: Congruence) -> ValidationReport:
    s = c.over
    rep = ValidationReport()
    covered = sorted(a for cl in c.classes for a in cl)
    rep.add("partition", None if covered == sorted(s.morphisms) else "classes do not partition the morphisms")
    rep.add("source-target", next((sorted(cl) for cl in c.classes
                                   if len({s.src[f] for f in cl}) > 1 or len({s.tgt[f] for f in cl}) > 1), None))
    bad = None
    for (g, f), h in s.comp.items():
        for (g2, f2), h2 in s.comp.items():
            if c.rep(g) == c.rep(g2) and c.rep(f) == c.rep(f2) and c.rep(h) != c.rep(h2):
                bad = [g, f, g2, f2]
                break
        if bad:
            break
    rep.add("compatibility", bad)
    return rep


def generated_congruence(s: Semigroupoid, generators: Iterable[tuple]) -> Congruence:
    gens = [tuple(p) for p in generators]
    for a, b in gens:
        if s.src[a] != s.src[b] or s.tgt[a] != s.tgt[b]:
            raise PreconditionError("generator pair has different source or target", (a, b))
    c = Congruence(s, _close(s.morphisms, s.comp, gens))
    rep = check_congruence(c)
    if not rep.passed:
        raise InvariantViolation("closure is not a congruence", rep.failures()[0])
    return c


def idempotent_generators(s: Semigroupoid) -> set[tuple[str, str]]:
    """Pairs of distinct idempotents with a common source."""
    idem = s.idempotents()
    return {(f, g) for f in idem for g in idem if f < g and s.src[f] == s.src[g]}


def collapse(s: Semigroupoid, c: Congruence) -> Semigroupoid:
    if c.over != s:
        raise PreconditionError("congruence belongs to a different semigroupoid")
    name = {f: class_atom(c.class_of(f)) for f in s.morphisms}
    comp: dict = {}
    for (g, f), h in s.comp.items():
        key = (name[g], name[f])
        if comp.setdefault(key, name[h]) != name[h]:
            raise InvariantViolation("quotient composition is not well-defined", [g, f])
    q = Semigroupoid(s.objects, set(name.values()), {name[f]: s.src[f] for f in s.morphisms},
                     {name[f]: s.tgt[f] for f in s.morphisms}, comp)
    rep = validate_semigroupoid(q)
    if not rep.passed:
        raise InvariantViolation("quotient is not a semigroupoid", rep.failures()[0])
    return q


def _require_lc_regular(s: Semigroupoid) -> None:
    if not is_regular(s)[0]:
        raise PreconditionError("semigroupoid is not regular")
    lc, w = is_locally_cancellative(s)
    if not lc:
        raise PreconditionError("semigroupoid is not locally cancellative", w)


def idempotent_congruence(s: Semigroupoid) -> Congruence:
    return generated_congruence(s, idempotent_generators(s))


def F_functor(s) -> Groupoid:
    """Collapse idempotents with a common source and read off identities and inverses."""
    s = s.base if isinstance(s, Groupoid) else s
    _require_lc_regular(s)
    cong = idempotent_congruence(s)
    q = collapse(s, cong)
    name = {f: class_atom(cong.class_of(f)) for f in s.morphisms}
    _, stars = is_regular(s)
    ident: dict = {}
    for f in s.morphisms:
        for fs in stars[f]:
            for x, e in ((s.src[f], s.comp[(fs, f)]), (s.tgt[f], s.comp[(f, fs)])):
                if ident.setdefault(x, name[e]) != name[e]:
                    raise InvariantViolation("identity of the quotient is not well-defined", (x, f))
    inv: dict = {}
    for f in s.morphisms:
        for fs in stars[f]:
            if inv.setdefault(name[f], name[fs]) != name[fs]:
                raise InvariantViolation("inverse of the quotient is not single-valued", f)
    g = Groupoid(q, ident, inv)
    rep = validate_groupoid(g)
    if not rep.passed:
        raise InvariantViolation("quotient is not a groupoid", rep.failures()[0])
    return g


def projection(s) -> dict[str, str]:
    s = s.base if isinstance(s, Groupoid) else s
    cong = idempotent_congruence(s)
    return {f: class_atom(cong.class_of(f)) for f in s.morphisms}


def F_on_functor(phi: Functor) -> Functor:
    """``F(phi) : F(G) -> F(H)``, ``[f] |-> [phi(f)]``."""
    G, H = phi.source, phi.target
    pg, ph = projection(G), projection(H)
    FG, FH = F_functor(G), F_functor(H)
    f1: dict = {}
    for f, g in phi.on_morphisms.items():
        if f1.setdefault(pg[f], ph[g]) != ph[g]:
            raise InvariantViolation("F of a semifunctor is not well-defined", f)
    out = Functor(FG, FH, dict(phi.on_objects), f1)
    rep = validate_functor(out)
    if not rep.passed:
        raise InvariantViolation("F of a semifunctor is not a functor", rep.failures()[0])
    return out


def F_on_multifunctor(phi: MultiFunctor) -> MultiFunctor:
    pg, ph = projection(phi.source), projection(phi.target)
    mapping: dict = {}
    for f, gs in phi.mapping.items():
        image = frozenset(ph[g] for g in gs)
        if mapping.setdefault(pg[f], image) != image:
            raise InvariantViolation("F of a multi-valued semifunctor is not well-defined", f)
    out = MultiFunctor(F_functor(phi.source), F_functor(phi.target), mapping)
    rep = validate_multifunctor(out)
    if not rep.passed:
        raise InvariantViolation("F of a multi-valued semifunctor is invalid", rep.failures()[0])
    return out


def F_on_submorphism(S: SubMorphism) -> SubMorphism:
    """``F(R)`` for ``R`` inside ``G x H``, re-embedded in ``F(G) x F(H)``."""
    G, H = S.source, S.target
    pg, ph = projection(G), projection(H)
    FR = F_functor(S.sub)
    lookup = {pair_atom(f, g): (f, g) for f in G.morphisms for g in H.morphisms}
    obj_lookup = {pair_atom(x, y): (x, y) for x in G.objects for y in H.objects}
    cong = idempotent_congruence(S.sub.base if isinstance(S.sub, Groupoid) else S.sub)
    mor_map: dict = {}
    for c in cong.classes:
        images = {pair_atom(pg[lookup[a][0]], ph[lookup[a][1]]) for a in c}
        if len(images) != 1:
            raise InvariantViolation("F(R) does not embed in F(G) x F(H)", sorted(c))
        mor_map[class_atom(c)] = images.pop()
    if len(set(mor_map.values())) != len(mor_map):
        raise InvariantViolation("F(R) does not embed injectively in F(G) x F(H)")
    ob_map = {o: pair_atom(*obj_lookup[o]) for o in FR.objects}
    out = SubMorphism(F_functor(G), F_functor(H), FR.relabel(ob_map, mor_map))
    if not is_subgroupoid(out.sub, product_groupoid(out.source, out.target)):
        raise InvariantViolation("F(R) is not a subgroupoid of F(G) x F(H)")
    return out


# -- unit, counit, triangles -------------------------------------------------

def unit(s) -> Functor:
    """The projection semifunctor ``G -> F(G)``."""
    base = s.base if isinstance(s, Groupoid) else s
    out = Functor(base, F_functor(base), {x: x for x in base.objects}, projection(base))
    rep = validate_functor(out)
    if not rep.passed:
        raise InvariantViolation("projection is not a semifunctor", rep.failures()[0])
    return out


def unit_graph(s) -> SubMorphism:
    """The unit packaged as a subsemigroupoid of ``G x F(G)``."""
    u = unit(s)
    G, FG = u.source, u.target
    mors = [pair_atom(f, u.on_morphisms[f]) for f in G.morphisms]
    objs = [pair_atom(x, x) for x in G.objects]
    src = {pair_atom(f, u.on_morphisms[f]): pair_atom(G.src[f], G.src[f]) for f in G.morphisms}
    tgt = {pair_atom(f, u.on_morphisms[f]): pair_atom(G.tgt[f], G.tgt[f]) for f in G.morphisms}
    comp = {(pair_atom(g, u.on_morphisms[g]), pair_atom(f, u.on_morphisms[f])): pair_atom(h, u.on_morphisms[h])
            for (g, f), h in G.comp.items()}
    S = SubMorphism(G, FG.base, Semigroupoid(objs, mors, src, tgt, comp))
    rep = validate_submorphism(S)
    if not rep.passed:
        raise InvariantViolation("unit graph is not an LC regular subsemigroupoid", rep.failures()[0])
    return S


def counit(g: Groupoid) -> Functor:
    """``F(G) -> G``, ``[f] |-> f``; an isomorphism for groupoids."""
    FG = F_functor(g)
    cong = idempotent_congruence(g.base)
    if not cong.is_discrete():
        raise InvariantViolation("idempotent congruence of a groupoid is not discrete")
    out = Functor(FG, g, {x: x for x in g.objects}, {class_atom({f}): f for f in g.morphisms})
    rep = validate_functor(out)
    if not rep.passed:
        raise InvariantViolation("counit is not a functor", rep.failures()[0])
    return out


def _compose(G: Functor, F: Functor) -> tuple[dict, dict]:
    return ({x: G.on_objects[y] for x, y in F.on_objects.items()},
            {f: G.on_morphisms[g] for f, g in F.on_morphisms.items()})


def _is_identity(maps: tuple[dict, dict]) -> bool:
    return all(k == v for m in maps for k, v in m.items())


def triangles(s) -> dict[str, bool]:
    """``counit_F(G) . F(unit_G) = 1`` and ``counit_H . unit_H = 1`` for ``H = F(G)``."""
    base = s.base if isinstance(s, Groupoid) else s
    FG = F_functor(base)
    left = _compose(counit(FG), F_on_functor(unit(base)))
    right = _compose(counit(FG), unit(FG))
    return {"F-side": _is_identity(left), "groupoid-side": _is_identity(right)}


def naturality(phi: Functor) -> dict[str, bool]:
    """Unit naturality for a semifunctor; counit naturality too when it is a functor of groupoids."""
    out = {"unit": _compose(F_on_functor(phi), unit(phi.source)) == _compose(unit(phi.target), phi)}
    if isinstance(phi.source, Groupoid) and isinstance(phi.target, Groupoid):
        out["counit"] = _compose(phi, counit(phi.source)) == _compose(counit(phi.target), F_on_functor(phi))
    return out


def unit_and_counit(s) -> dict:
    """Report for the adjunction between groupoids and LC regular semigroupoids at ``s``."""
    report = {"unit": unit(s), "unit-graph": unit_graph(s), "triangles": triangles(s)}
    if isinstance(s, Groupoid):
        report["counit"] = counit(s)
    return report


# -- composite right adjoint from H*-algebras to Frobenius algebras ------------------

def corollary_generators(h: HStarAlgebra) -> set[tuple[str, str]]:
    """Pairs of distinct idempotents ``f, g`` with ``gf`` defined."""
    c = h.base
    idem = [x for x in c.atoms if c.mul(x, x) == x]
    return {(f, g) for f in idem for g in idem if f != g and c.mul(g, f) is not None}


def corollary_partition(h: HStarAlgebra) -> tuple[frozenset, ...]:
    c = h.base
    return _close(c.atoms, c.partial_product(), corollary_generators(h))


def corollary_quotient_direct(h: HStarAlgebra) -> MulCandidate:
    c = h.base
    classes = corollary_partition(h)
    name = {a: class_atom(cl) for cl in classes for a in cl}
    table: dict = {}
    for (g, f), gf in c.partial_product().items():
        if table.setdefault((name[g], name[f]), name[gf]) != name[gf]:
            raise InvariantViolation("quotient multiplication is not well-defined", (g, f))
    return MulCandidate.from_table(sorted(set(name.values())), table)


def corollary_quotient_composite(h: HStarAlgebra) -> FrobAlgebra:
    return groupoid_to_frob(F_functor(hstar_to_semigroupoid(h)))


def corollary_quotient(h: HStarAlgebra) -> FrobAlgebra:
    """The Frobenius algebra ``(X/~, m')`` computed directly, checked against the composite route."""
    direct = as_frobenius(corollary_quotient_direct(h))
    composite = corollary_quotient_composite(h)
    if direct != composite:
        raise InvariantViolation("direct and composite quotients differ",
                                 (direct.base.triples(), composite.base.triples()))
    return direct
