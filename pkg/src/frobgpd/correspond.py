"""Conversions between the algebraic and the categorical presentations.

Each conversion re-checks the intermediate facts its correctness rests on
and raises :class:`InvariantViolation` if one fails; on valid input these
checks are unreachable.
"""

from __future__ import annotations

from .algebra import (FrobAlgebra, HStarAlgebra, MulCandidate, as_frobenius, as_hstar, check_A_elementwise,
                      check_M_elementwise, pseudoinverses)
from .errors import ConversionError, InvariantViolation, PreconditionError
from .structures import (Groupoid, Semigroupoid, is_locally_cancellative, is_regular, validate_groupoid,
                         validate_semigroupoid)


def _unique(values, what: str, witness):
    vals = set(values)
    if len(vals) != 1:
        raise InvariantViolation(what, (witness, sorted(vals)))
    return vals.pop()


def frob_to_groupoid(f: FrobAlgebra) -> Groupoid:
    """Objects are the unit elements; ``s(f)`` is the unit ``u`` with ``fu`` defined."""
    c = f.base
    U = sorted(f.unit_set)
    X = c.atoms
    mul = c.mul
    src = {x: _unique([u for u in U if mul(x, u) is not None], "source is not a function", x) for x in X}
    tgt = {x: _unique([u for u in U if mul(u, x) is not None], "target is not a function", x) for x in X}

    defined = {(g, h) for g in X for h in X if mul(g, h) is not None}
    pullback = {(g, h) for g in X for h in X if src[g] == tgt[h]}
    if defined != pullback:
        raise InvariantViolation("composable pairs are not the pullback of source and target",
                                 sorted(defined ^ pullback)[0])

    unit = set(U)
    inv = {x: _unique([y for y in X if mul(y, x) in unit and mul(x, y) in unit],
                      "inverse is not a function", x) for x in X}
    base = Semigroupoid(U, X, src, tgt, c.partial_product())
    g = Groupoid(base, {u: u for u in U}, inv)
    rep = validate_groupoid(g)
    if not rep["inverse-diagram"].passed:
        raise InvariantViolation("inverse-law diagram fails on the converted groupoid", rep["inverse-diagram"].witness)
    if not rep.passed:
        raise InvariantViolation("converted structure is not a groupoid", rep.failures()[0])
    return g


def groupoid_to_frob(g: Groupoid) -> FrobAlgebra:
    """The graph of composition, with the identities as unit set."""
    rep = validate_groupoid(g)
    if not rep.passed:
        bad = rep.failures()[0]
        raise ConversionError(f"not a groupoid: {bad.id} fails", bad.witness)
    c = MulCandidate.from_table(g.morphisms, dict(g.comp))
    try:
        return as_frobenius(c, unit_hint=g.identities())
    except PreconditionError as exc:
        raise InvariantViolation("composition of a groupoid is not a relative Frobenius algebra", str(exc))


def groupoid_object_renaming(g: Groupoid) -> dict[str, str]:
    """The isomorphism ``x -> e(x)`` onto the objects of the round-tripped groupoid."""
    return dict(g.ident)


def induced_semigroupoid(c: MulCandidate) -> Semigroupoid:
    """Objects are idempotents, ``src(f) = f*f`` and ``tgt(f) = ff*``.

    Raises :class:`PreconditionError` if some element has no pseudoinverse,
    if ``f*f`` or ``ff*`` depends on the choice of ``f*``, or if a pair with
    matching source and target has no product.
    """
    if not check_M_elementwise(c) or not check_A_elementwise(c):
        raise PreconditionError("induced semigroupoid needs (M) and (A)")
    mul = c.mul
    X = c.atoms
    src, tgt = {}, {}
    for f in X:
        stars = sorted(pseudoinverses(c, f))
        if not stars:
            raise PreconditionError("element has no pseudoinverse", f)
        left = {mul(s, f) for s in stars}
        right = {mul(f, s) for s in stars}
        if len(left) != 1 or len(right) != 1:
            raise PreconditionError("f*f or ff* depends on the choice of pseudoinverse", f)
        src[f], tgt[f] = left.pop(), right.pop()
    idem = [x for x in X if mul(x, x) == x]
    for f in X:
        if src[f] not in idem or tgt[f] not in idem:
            raise PreconditionError("f*f or ff* is not idempotent", f)
    comp = {}
    for g in X:
        for f in X:
            if src[g] == tgt[f]:
                gf = mul(g, f)
                if gf is None:
                    raise PreconditionError("composable pair has no product", (g, f))
                comp[(g, f)] = gf
    return Semigroupoid(idem, X, src, tgt, comp)


def hstar_to_semigroupoid(h: HStarAlgebra) -> Semigroupoid:
    try:
        s = induced_semigroupoid(h.base)
    except PreconditionError as exc:
        raise InvariantViolation("induced semigroupoid of an H*-algebra is ill-defined", str(exc))
    rep = validate_semigroupoid(s)
    if not rep.passed:
        raise InvariantViolation("induced structure is not a semigroupoid", rep.failures()[0])
    if not is_regular(s)[0]:
        raise InvariantViolation("induced semigroupoid is not regular")
    lc, w = is_locally_cancellative(s)
    if not lc:
        raise InvariantViolation("induced semigroupoid is not locally cancellative", w)
    return s


def semigroupoid_to_hstar(s: Semigroupoid) -> HStarAlgebra:
    """The graph of composition; refuses inputs that are not LC and regular."""
    rep = validate_semigroupoid(s)
    if not rep.passed:
        bad = rep.failures()[0]
        raise ConversionError(f"not a semigroupoid: {bad.id} fails", bad.witness)
    if not is_regular(s)[0]:
        missing = [f for f, st in is_regular(s)[1].items() if not st]
        raise ConversionError("semigroupoid is not regular", missing[0])
    lc, w = is_locally_cancellative(s)
    if not lc:
        raise ConversionError("semigroupoid is not locally cancellative", w)
    c = MulCandidate.from_table(s.morphisms, dict(s.comp))
    try:
        return as_hstar(c)
    except PreconditionError as exc:
        raise InvariantViolation("composition of an LC regular semigroupoid is not an H*-algebra", str(exc))
