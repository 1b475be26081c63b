"""Morphisms on both sides of the correspondence.

Algebra side: relations ``r : X -> Y`` between carriers, classified by
the conditions (R), (I) / (I'), multiplication preservation and
functionality.  Groupoid side: functors, multi-valued functors and
sub-(semi)groupoids of a product.  Conversions between the two sides are
re-validated on every call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from . import finrel as fr
from .algebra import (FrobAlgebra, HStarAlgebra, MulCandidate, _involution_masks, _subset_atoms, as_frobenius,
                      as_hstar, find_unit, pseudoinverses)
from .correspond import (frob_to_groupoid, groupoid_to_frob, hstar_to_semigroupoid, semigroupoid_to_hstar)
from .errors import ClosureError, CompositionError, ConversionError, InvariantViolation, PreconditionError
from .finrel import Rel
from .structures import (Groupoid, Semigroupoid, ValidationReport, is_locally_cancellative, is_regular,
                         is_subgroupoid, is_subsemigroupoid, pair_atom, product_groupoid, product_semigroupoid,
                         validate_groupoid, validate_semigroupoid)

Algebra = Union[FrobAlgebra, HStarAlgebra]

# categorical cross-checks are skipped when |X|*|Y| exceeds this
CATEGORICAL_PAIR_LIMIT = 64


@dataclass(frozen=True)
class RelMorphism:
    source: Algebra
    target: Algebra
    r: Rel

    def __post_init__(self):
        if self.r.dom != self.source.carrier or self.r.cod != self.target.carrier:
            raise CompositionError(self.r.dom, self.source.carrier,
                                   "relation does not run between the two carriers")

    @property
    def kind(self) -> str:
        if isinstance(self.source, FrobAlgebra) and isinstance(self.target, FrobAlgebra):
            return "frobenius"
        return "hstar"

    def pairs(self) -> list[tuple]:
        return sorted(self.r.pairs())


def identity_morphism(a: Algebra) -> RelMorphism:
    return RelMorphism(a, a, fr.identity(a.carrier))


def _mul(a: Algebra):
    return a.base.mul


def _split() -> Rel:
    return Rel(fr.ONE, fr.product_set(fr.ONE, fr.ONE), [(fr.UNIT_ATOM, (fr.UNIT_ATOM, fr.UNIT_ATOM))])


def _small(m: RelMorphism) -> bool:
    return len(m.source.carrier) * len(m.target.carrier) <= CATEGORICAL_PAIR_LIMIT


def _agree(name: str, categorical: bool, concrete: bool, m: RelMorphism) -> bool:
    if categorical != concrete:
        raise InvariantViolation(f"categorical and concrete {name} disagree", m.pairs())
    return concrete


# -- (R) ---------------------------------------------------------------------

def generated_pairs(m: RelMorphism) -> set:
    """``{(xx', yy') | (x, y), (x', y') in r, both products defined}``."""
    mx, my = _mul(m.source), _mul(m.target)
    pairs = m.pairs()
    out = set()
    for x, y in pairs:
        for x2, y2 in pairs:
            a, b = mx(x, x2), my(y, y2)
            if a is not None and b is not None:
                out.add((a, b))
    return out


def check_R_concrete(m: RelMorphism) -> bool:
    return generated_pairs(m) == set(m.pairs())


def R_witness(m: RelMorphism):
    """A product of two related pairs missing from ``r``, or a pair of ``r`` that is no product."""
    mx, my = _mul(m.source), _mul(m.target)
    pairs = m.pairs()
    have = set(pairs)
    for x, y in pairs:
        for x2, y2 in pairs:
            a, b = mx(x, x2), my(y, y2)
            if a is not None and b is not None and (a, b) not in have:
                return {"factors": [(x, y), (x2, y2)], "missing": (a, b)}
    extra = sorted(have - generated_pairs(m))
    return {"not-a-product": extra[0]} if extra else None


def check_R_categorical(m: RelMorphism) -> bool:
    X, Y = m.source.carrier, m.target.carrier
    nr = fr.name(m.r)
    middle = fr.product_all(fr.identity(X), fr.swap(Y, X), fr.identity(Y))
    lhs = fr.compose_all(fr.product(m.source.m, m.target.m), middle, fr.product(nr, nr), _split())
    return lhs == nr


def check_R(m: RelMorphism) -> bool:
    concrete = check_R_concrete(m)
    if _small(m):
        return _agree("(R)", check_R_categorical(m), concrete, m)
    return concrete


# -- (I) ---------------------------------------------------------------------

def _require_frob(m: RelMorphism) -> tuple[Groupoid, Groupoid]:
    if m.kind != "frobenius":
        raise PreconditionError("(I) is stated between relative Frobenius algebras")
    return frob_to_groupoid(m.source), frob_to_groupoid(m.target)


def check_I_concrete(m: RelMorphism) -> bool:
    G, H = _require_frob(m)
    pairs = set(m.pairs())
    return all(((G.inv[x], H.inv[y]) in pairs) for x, y in pairs)


def inversion_relation(f: FrobAlgebra) -> Rel:
    """``(1 x eta^t) . (m^t x 1) . (u x 1)``, read as a relation ``X -> X``."""
    X = f.carrier
    one = fr.identity(X)
    return fr.compose_all(fr.converse(fr.right_unitor(X)), fr.product(one, fr.converse(fr.eta(X))),
                          fr.product(fr.converse(f.m), one), fr.product(f.unit, one), fr.left_unitor(X))


def check_I_categorical(m: RelMorphism) -> bool:
    _require_frob(m)
    X, Y = m.source.carrier, m.target.carrier
    lhs = fr.compose_all(fr.converse(fr.right_unitor(Y)), fr.product(m.r, fr.converse(fr.eta(X))),
                         fr.product(fr.converse(m.source.m), fr.identity(X)),
                         fr.product(m.source.unit, fr.identity(X)), fr.left_unitor(X))
    rhs = fr.compose_all(fr.converse(fr.left_unitor(Y)), fr.product(fr.converse(m.target.unit), fr.identity(Y)),
                         fr.product(m.target.m, fr.identity(Y)), fr.product(m.r, fr.eta(Y)),
                         fr.right_unitor(X))
    return lhs == rhs


def check_I(m: RelMorphism) -> bool:
    """``(x, y) in r  <=>  (x^-1, y^-1) in r``, cross-checked with the diagrammatic form."""
    concrete = check_I_concrete(m)
    if _small(m):
        return _agree("(I)", check_I_categorical(m), concrete, m)
    return concrete


# -- (I') --------------------------------------------------------------------

def _stars(a: Algebra) -> dict:
    return {x: pseudoinverses(a.base, x) for x in a.carrier}


def i_prime_readings(m: RelMorphism) -> tuple[bool, bool]:
    """(universal, existential) readings of "for any pseudoinverses"."""
    sx, sy = _stars(m.source), _stars(m.target)
    pairs = set(m.pairs())
    universal = True
    existential = True
    for x in m.source.carrier:
        for y in m.target.carrier:
            inside = (x, y) in pairs
            hits = [(a, b) in pairs for a in sx[x] for b in sy[y]]
            if not hits or any(h != inside for h in hits):
                universal = False
            if inside != any(hits):
                existential = False
    return universal, existential


def check_I_prime_points(m: RelMorphism) -> bool:
    """``y^t . r . x = (y*)^t . r . x*`` for points ``x``, ``y``.

    Exhaustive over all pairs of points for small carriers; both sides
    are unions over the elements of the points, so singletons suffice
    in general and are used beyond that size.
    """
    cx, cy = m.source.base, m.target.base
    ix, iy = _involution_masks(cx), _involution_masks(cy)
    nx, ny = cx.n, cy.n
    if nx <= 4 and ny <= 4:
        xs, ys = range(1 << nx), range(1 << ny)
    else:
        xs, ys = [1 << i for i in range(nx)], [1 << j for j in range(ny)]
    M = m.r.matrix

    def meets(A, B):
        return any(M[i, j] for i in range(nx) if (A >> i) & 1 for j in range(ny) if (B >> j) & 1)

    return all(meets(A, B) == meets(ix[A], iy[B]) for A in xs for B in ys)


def check_I_prime(m: RelMorphism) -> bool:
    universal, _ = i_prime_readings(m)
    return _agree("(I')", check_I_prime_points(m), universal, m)


# -- multiplication ------------------------------------------------------------

def defined_pairs(c: MulCandidate) -> Rel:
    """The partial identity on pairs whose product is defined."""
    return fr.intersection(fr.compose(fr.converse(c.m), c.m), fr.identity(c.m.dom))


def check_mul_preserving(m: RelMorphism, strict: bool = False) -> bool:
    """``r . m_X = m_Y . (r x r)`` on composable pairs.

    With ``strict=True`` the equation is evaluated on all of ``X x X``,
    which also demands that ``r`` never relates a non-composable pair to a
    composable one.
    """
    lhs = fr.compose(m.r, m.source.m)
    rhs = fr.compose(m.target.m, fr.product(m.r, m.r))
    if not strict:
        rhs = fr.compose(rhs, defined_pairs(m.source.base))
    return lhs == rhs


def preserves_units(m: RelMorphism) -> bool:
    """The 2-cell ``r . u_X <= u_Y``."""
    return fr.is_subrelation(fr.compose(m.r, m.source.unit), m.target.unit)


def classify(m: RelMorphism) -> frozenset:
    """Subset of ``{"rel", "algebra", "func"}``; the inclusion chain is asserted."""
    inv = check_I(m) if m.kind == "frobenius" else check_I_prime(m)
    R = check_R(m)
    algebra = inv and check_mul_preserving(m)
    func = algebra and fr.is_function(m.r)
    if func and m.kind == "frobenius":
        func = preserves_units(m)
    if algebra and not R:
        raise InvariantViolation("multiplication-preserving morphism violates (R)", m.pairs())
    out = set()
    if inv and R:
        out.add("rel")
    if algebra:
        out.add("algebra")
    if func:
        out.add("func")
    return frozenset(out)


def compose_morphisms(s: RelMorphism, r: RelMorphism, strict: bool = True) -> RelMorphism:
    """``s . r``, with every class shared by ``r`` and ``s`` re-checked on the result.

    The "rel" class is not closed when the middle algebra has several
    objects: ``xx'`` and ``zz'`` may be defined while the linking ``yy'``
    is not.  ``strict`` raises ClosureError on a lost class; otherwise
    the bare composite is returned.
    """
    if r.target != s.source:
        raise CompositionError(r.target.carrier, s.source.carrier, "middle structures differ")
    out = RelMorphism(r.source, s.target, fr.compose(s.r, r.r))
    lost = (classify(r) & classify(s)) - classify(out)
    if lost and strict:
        raise ClosureError(f"composite leaves class {sorted(lost)}", R_witness(out))
    return out


# -- groupoid-side morphisms -----------------------------------------------------

Structure = Union[Semigroupoid, Groupoid]


def _sgpd(s: Structure) -> Semigroupoid:
    return s.base if isinstance(s, Groupoid) else s


@dataclass(frozen=True)
class Functor:
    """A (semi)functor given by its object and morphism maps."""

    source: Structure
    target: Structure
    on_objects: Mapping = field(hash=False)
    on_morphisms: Mapping = field(hash=False)

    @property
    def variant(self) -> str:
        return "functor" if isinstance(self.source, Groupoid) else "semifunctor"


@dataclass(frozen=True)
class MultiFunctor:
    """A multi-valued (semi)functor ``f |-> F(f) subset of H1``."""

    source: Structure
    target: Structure
    mapping: Mapping = field(hash=False)

    @property
    def variant(self) -> str:
        return "multifunctor" if isinstance(self.source, Groupoid) else "multivalued-semifunctor"


@dataclass(frozen=True)
class SubMorphism:
    """A sub-(semi)groupoid of ``source x target``."""

    source: Structure
    target: Structure
    sub: Structure

    @property
    def variant(self) -> str:
        return "subgroupoid" if isinstance(self.sub, Groupoid) else "subsemigroupoid"

    def pairs(self) -> list[tuple]:
        lookup = {pair_atom(f, g): (f, g) for f in self.source.morphisms for g in self.target.morphisms}
        return sorted(lookup[a] for a in self.sub.morphisms)


def validate_functor(F: Functor) -> ValidationReport:
    rep = ValidationReport()
    G, H = _sgpd(F.source), _sgpd(F.target)
    f0, f1 = F.on_objects, F.on_morphisms
    total = set(f0) == set(G.objects) and set(f1) == set(G.morphisms) and \
        all(v in H.objects for v in f0.values()) and all(v in H.morphisms for v in f1.values())
    rep.add("total-maps", None if total else "object or morphism map is not a total map into the target")
    if not total:
        return rep
    rep.add("source", next((f for f in G.morphisms if H.src[f1[f]] != f0[G.src[f]]), None))
    rep.add("target", next((f for f in G.morphisms if H.tgt[f1[f]] != f0[G.tgt[f]]), None))
    rep.add("composition", next(([g, f] for (g, f), h in G.comp.items()
                                 if H.comp.get((f1[g], f1[f])) != f1[h]), None))
    if isinstance(F.source, Groupoid) and isinstance(F.target, Groupoid):
        rep.add("identities", next((x for x, e in F.source.ident.items()
                                    if f1[e] != F.target.ident[f0[x]]), None))
    return rep


def validate_multifunctor(F: MultiFunctor) -> ValidationReport:
    """Composition: ``F(g)F(f) = F(gf)`` as sets of defined composites.

    Identities (groupoids only): ``F(e(x))`` contains an identity of the target.
    """
    rep = ValidationReport()
    G, H = _sgpd(F.source), _sgpd(F.target)
    ok = set(F.mapping) == set(G.morphisms) and all(v in H.morphisms for vs in F.mapping.values() for v in vs)
    rep.add("total-map", None if ok else "mapping is not defined on every morphism")
    if not ok:
        return rep
    bad = None
    for (g, f), h in G.comp.items():
        composites = {H.comp[(b, a)] for b in F.mapping[g] for a in F.mapping[f] if (b, a) in H.comp}
        if composites != set(F.mapping[h]):
            bad = [g, f]
            break
    rep.add("composition", bad)
    if isinstance(F.source, Groupoid) and isinstance(F.target, Groupoid):
        ids = F.target.identities()
        rep.add("identities", next((x for x, e in F.source.ident.items() if not set(F.mapping[e]) & ids), None))
    return rep


def validate_submorphism(S: SubMorphism) -> ValidationReport:
    rep = ValidationReport()
    if isinstance(S.sub, Groupoid):
        inner = validate_groupoid(S.sub)
        rep.add("valid", None if inner.passed else inner.failures()[0].id)
        prod = product_groupoid(S.source, S.target)
        rep.add("inclusion", None if inner.passed and is_subgroupoid(S.sub, prod) else "not a subgroupoid")
    else:
        inner = validate_semigroupoid(S.sub)
        rep.add("valid", None if inner.passed else inner.failures()[0].id)
        if inner.passed:
            rep.add("regular", None if is_regular(S.sub)[0] else "not regular")
            rep.add("locally-cancellative", is_locally_cancellative(S.sub)[1])
        prod = product_semigroupoid(_sgpd(S.source), _sgpd(S.target))
        rep.add("inclusion", None if inner.passed and is_subsemigroupoid(S.sub, prod) else "not a subsemigroupoid")
    return rep


def relation_algebra(m: RelMorphism) -> MulCandidate:
    """``m_r = (m_X x m_Y) . (1 x swap x 1)`` restricted to ``r``; atoms are ``(x,y)``."""
    mx, my = _mul(m.source), _mul(m.target)
    pairs = m.pairs()
    atoms = [pair_atom(x, y) for x, y in pairs]
    inside = set(pairs)
    triples = []
    for a, b in pairs:
        for c, d in pairs:
            ac, bd = mx(a, c), my(b, d)
            if ac is not None and bd is not None:
                if (ac, bd) not in inside:
                    raise PreconditionError("products leave the relation; (R) fails", (ac, bd))
                triples.append((pair_atom(a, b), pair_atom(c, d), pair_atom(ac, bd)))
    return MulCandidate.from_triples(atoms, triples)


def _check(cond: bool, message: str, m: RelMorphism) -> None:
    if not cond:
        raise ConversionError(message, m.pairs())


def morphism_to_subgroupoid(m: RelMorphism) -> SubMorphism:
    _check(m.kind == "frobenius", "subgroupoids correspond to morphisms of Frobenius algebras", m)
    _check(check_R(m), "(R) fails", m)
    _check(check_I(m), "(I) fails", m)
    c = relation_algebra(m)
    U = find_unit(c)
    expected = {pair_atom(x, y) for x, y in m.pairs() if x in m.source.unit_set and y in m.target.unit_set}
    if U is None or set(U) != expected:
        raise InvariantViolation("unit of the induced algebra is not r meet (U_X x U_Y)", (U, sorted(expected)))
    R = frob_to_groupoid(as_frobenius(c))
    G, H = frob_to_groupoid(m.source), frob_to_groupoid(m.target)
    out = SubMorphism(G, H, R)
    rep = validate_submorphism(out)
    if not rep.passed:
        raise InvariantViolation("induced groupoid is not a subgroupoid of the product", rep.failures()[0])
    return out


def subgroupoid_to_morphism(S: SubMorphism, source: FrobAlgebra | None = None,
                            target: FrobAlgebra | None = None) -> RelMorphism:
    rep = validate_submorphism(S)
    if not rep.passed:
        raise ConversionError("not a subgroupoid of the product", rep.failures()[0])
    X = source or groupoid_to_frob(S.source)
    Y = target or groupoid_to_frob(S.target)
    m = RelMorphism(X, Y, Rel(X.carrier, Y.carrier, S.pairs()))
    if not (check_R(m) and check_I(m)):
        raise InvariantViolation("subgroupoid relation fails (R) or (I)", m.pairs())
    return m


def functor_to_morphism(F: Functor) -> RelMorphism:
    rep = validate_functor(F)
    if not rep.passed:
        raise ConversionError("not a functor", rep.failures()[0])
    X, Y = groupoid_to_frob(F.source), groupoid_to_frob(F.target)
    m = RelMorphism(X, Y, Rel(X.carrier, Y.carrier, F.on_morphisms.items()))
    if "func" not in classify(m):
        raise InvariantViolation("graph of a functor is not a func-class morphism", m.pairs())
    return m


def morphism_to_functor(m: RelMorphism) -> Functor:
    _check("func" in classify(m), "not a func-class morphism", m)
    G, H = frob_to_groupoid(m.source), frob_to_groupoid(m.target)
    f1 = fr.as_function(m.r)
    # objects are unit elements, and a functor sends identities to identities
    f0 = {x: f1[x] for x in G.objects}
    F = Functor(G, H, f0, f1)
    if not validate_functor(F).passed:
        raise InvariantViolation("func-class morphism is not a functor", m.pairs())
    return F


def multifunctor_to_morphism(F: MultiFunctor) -> RelMorphism:
    rep = validate_multifunctor(F)
    if not rep.passed:
        raise ConversionError("not a multi-valued functor", rep.failures()[0])
    X, Y = groupoid_to_frob(F.source), groupoid_to_frob(F.target)
    m = RelMorphism(X, Y, Rel(X.carrier, Y.carrier, ((f, g) for f, gs in F.mapping.items() for g in gs)))
    if "algebra" not in classify(m):
        raise InvariantViolation("graph of a multi-valued functor is not multiplication-preserving", m.pairs())
    return m


def morphism_to_multifunctor(m: RelMorphism) -> MultiFunctor:
    _check("algebra" in classify(m), "not an algebra-class morphism", m)
    G, H = frob_to_groupoid(m.source), frob_to_groupoid(m.target)
    F = MultiFunctor(G, H, {x: frozenset(m.r.image(x)) for x in m.source.carrier})
    rep = validate_multifunctor(F)
    if not rep.passed:
        raise ConversionError("algebra-class morphism is not a multi-valued functor", rep.failures()[0])
    return F


def hstar_morphism_to_subsemigroupoid(m: RelMorphism) -> SubMorphism:
    _check(check_R(m), "(R) fails", m)
    _check(check_I_prime(m), "(I') fails", m)
    c = relation_algebra(m)
    sub = hstar_to_semigroupoid(as_hstar(c))
    G, H = hstar_to_semigroupoid(_as_h(m.source)), hstar_to_semigroupoid(_as_h(m.target))
    out = SubMorphism(G, H, sub)
    rep = validate_submorphism(out)
    if not rep.passed:
        raise InvariantViolation("induced semigroupoid is not an LC regular subsemigroupoid", rep.failures()[0])
    return out


def subsemigroupoid_to_hstar_morphism(S: SubMorphism, source: Algebra | None = None,
                                      target: Algebra | None = None) -> RelMorphism:
    rep = validate_submorphism(S)
    if not rep.passed:
        raise ConversionError("not an LC regular subsemigroupoid of the product", rep.failures()[0])
    X = source or semigroupoid_to_hstar(_sgpd(S.source))
    Y = target or semigroupoid_to_hstar(_sgpd(S.target))
    m = RelMorphism(X, Y, Rel(X.carrier, Y.carrier, S.pairs()))
    if not (check_R(m) and check_I_prime(m)):
        raise InvariantViolation("subsemigroupoid relation fails (R) or (I')", m.pairs())
    return m


def _as_h(a: Algebra) -> HStarAlgebra:
    return a if isinstance(a, HStarAlgebra) else HStarAlgebra(a.base)


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G . F``."""
    if F.target != G.source:
        raise CompositionError(F.target, G.source)
    return Functor(F.source, G.target, {x: G.on_objects[y] for x, y in F.on_objects.items()},
                   {f: G.on_morphisms[g] for f, g in F.on_morphisms.items()})


def compose_submorphisms(S: SubMorphism, R: SubMorphism) -> SubMorphism:
    """``S . R``: relational composite of objects and of morphisms, re-validated."""
    if R.target != S.source:
        raise CompositionError(R.target, S.source)
    A, C = R.source, S.target

    def rel_compose(r_pairs, s_pairs):
        return sorted({(a, c) for a, b in r_pairs for b2, c in s_pairs if b == b2})

    mors = rel_compose(R.pairs(), S.pairs())
    obj_lookup = lambda T: {pair_atom(x, y): (x, y) for x in T.source.objects for y in T.target.objects}
    objs = rel_compose([obj_lookup(R)[o] for o in R.sub.objects], [obj_lookup(S)[o] for o in S.sub.objects])
    full = product_groupoid(A, C) if isinstance(R.sub, Groupoid) else \
        product_semigroupoid(_sgpd(A), _sgpd(C))
    ms = [pair_atom(a, c) for a, c in mors]
    os_ = [pair_atom(a, c) for a, c in objs]
    mset = set(ms)
    base = Semigroupoid(os_, ms, {f: full.src[f] for f in ms}, {f: full.tgt[f] for f in ms},
                        {k: h for k, h in full.comp.items() if k[0] in mset and k[1] in mset})
    sub: Structure = base
    if isinstance(R.sub, Groupoid):
        sub = Groupoid(base, {x: full.ident[x] for x in os_}, {f: full.inv[f] for f in ms})
    out = SubMorphism(A, C, sub)
    rep = validate_submorphism(out)
    if not rep.passed:
        raise ClosureError("composite of submorphisms is not a substructure", rep.failures()[0])
    return out


# -- the adjunction between H*-algebras and LC regular semigroupoids ----------------

def reflected_algebra(h: HStarAlgebra) -> HStarAlgebra:
    """``semigroupoid_to_hstar(hstar_to_semigroupoid(h))``."""
    return semigroupoid_to_hstar(hstar_to_semigroupoid(h))


def restricted_multiplication(h: HStarAlgebra) -> set:
    """``{(g, f, gf) | exists g*, f*. g*g = ff*}`` computed directly from ``m``."""
    c = h.base
    out = set()
    for g in c.atoms:
        for f in c.atoms:
            gf = c.mul(g, f)
            if gf is None:
                continue
            if any(c.mul(gs, g) == c.mul(f, fs) is not None
                   for gs in pseudoinverses(c, g) for fs in pseudoinverses(c, f)):
                out.add((g, f, gf))
    return out


def hstar_unit(h: HStarAlgebra) -> RelMorphism:
    """The identity relation from the reflected algebra into ``h``.

    Its multiplication is a subrelation of ``m``; both constructions of
    that subrelation are compared.
    """
    r = reflected_algebra(h)
    if set(r.base.triples()) != restricted_multiplication(h):
        raise InvariantViolation("reflected multiplication differs from the restricted one")
    if not fr.is_subrelation(r.m, h.m):
        raise InvariantViolation("reflected multiplication is not a subrelation of m")
    u = RelMorphism(r, h, fr.identity(h.carrier))
    if "rel" not in classify(u):
        raise InvariantViolation("adjunction unit is not a morphism", u.pairs())
    return u


def double_dual(s: Semigroupoid) -> Semigroupoid:
    return hstar_to_semigroupoid(semigroupoid_to_hstar(s))


def semigroupoid_counit(s: Semigroupoid) -> tuple[Functor, SubMorphism]:
    """The semifunctor ``G'' -> G`` (``f |-> f``, ``e |-> src(e)``) and its graph.

    ``G''`` has the idempotents of ``G`` as objects.
    """
    s = _sgpd(s)
    dd = double_dual(s)
    F = Functor(dd, s, {e: s.src[e] for e in dd.objects}, {f: f for f in s.morphisms})
    rep = validate_functor(F)
    if not rep.passed:
        raise InvariantViolation("counit is not a semifunctor", rep.failures()[0])
    prod = product_semigroupoid(dd, s)
    mors = [pair_atom(f, f) for f in s.morphisms]
    objs = sorted({prod.src[f] for f in mors} | {prod.tgt[f] for f in mors})
    mset = set(mors)
    graph = Semigroupoid(objs, mors, {f: prod.src[f] for f in mors}, {f: prod.tgt[f] for f in mors},
                         {k: v for k, v in prod.comp.items() if k[0] in mset and k[1] in mset})
    S = SubMorphism(dd, s, graph)
    rep = validate_submorphism(S)
    if not rep.passed:
        raise InvariantViolation("counit graph is not an LC regular subsemigroupoid", rep.failures()[0])
    return F, S


def counit_is_iso(s: Semigroupoid) -> bool:
    """``e |-> src(e)`` is a bijection from idempotents onto objects."""
    s = _sgpd(s)
    idem = s.idempotents()
    image = [s.src[e] for e in idem]
    predicate = len(set(image)) == len(image) and set(image) == set(s.objects)
    F, _ = semigroupoid_counit(s)
    actual = len(set(F.on_objects.values())) == len(F.on_objects) == len(s.objects)
    if predicate != actual:
        raise InvariantViolation("counit bijectivity disagrees with the idempotent predicate")
    return predicate


def unit_is_iso(h: HStarAlgebra) -> bool:
    """``gf`` defined implies ``g*g = ff*`` for some pseudoinverses."""
    c = h.base
    predicate = True
    for g in c.atoms:
        for f in c.atoms:
            if c.mul(g, f) is not None and not any(
                    c.mul(gs, g) == c.mul(f, fs) for gs in pseudoinverses(c, g) for fs in pseudoinverses(c, f)):
                predicate = False
    actual = hstar_unit(h).source.m == h.m
    if predicate != actual:
        raise InvariantViolation("unit bijectivity disagrees with the definedness predicate")
    return predicate


def hstar_triangles(h: HStarAlgebra) -> dict[str, bool]:
    """Triangle identities at ``h`` and at its semigroupoid ``G = Phi(h)``.

    Each side composes a unit component with the image of a counit
    component (or vice versa); both pieces must be valid morphisms between
    the right structures and their relational composite the identity.
    """
    G = hstar_to_semigroupoid(h)
    u = hstar_unit(h)
    # Phi applied to the unit lands in Phi(h') x Phi(h); h' is Phi^-1 Phi(h)
    phi_u = hstar_morphism_to_subsemigroupoid(u)
    F, counit_graph = semigroupoid_counit(G)
    at_g = phi_u.source == counit_graph.source and phi_u.target == G and \
        set(phi_u.pairs()) == set(counit_graph.pairs())
    comp_g = {(a, c) for a, b in counit_graph.pairs() for b2, c in phi_u.pairs() if b == b2}
    # Psi applied to the counit at G, followed by the unit at Psi(G)
    psi_c = subsemigroupoid_to_hstar_morphism(counit_graph)
    u_psi = hstar_unit(psi_c.target)
    at_h = psi_c.source == u_psi.source and psi_c.target == u_psi.target
    comp_h = {(a, c) for a, b in psi_c.pairs() for b2, c in u_psi.pairs() if b == b2}
    ident = {(x, x) for x in h.carrier}
    return {"semigroupoid-side": at_g and comp_g == ident, "algebra-side": at_h and comp_h == ident}


def semigroupoid_triangles(s: Semigroupoid) -> dict[str, bool]:
    return hstar_triangles(semigroupoid_to_hstar(_sgpd(s)))
