from __future__ import annotations

import pytest

from frobgpd import quotient as Q
from frobgpd import structures as S
from frobgpd.algebra import as_hstar
from frobgpd.correspond import frob_to_groupoid, groupoid_to_frob, hstar_to_semigroupoid
from frobgpd.enumeration import enumerate_frobenius, enumerate_hstar, enumerate_regular
from frobgpd.errors import PreconditionError
from frobgpd.morphisms import Functor, SubMorphism, identity_morphism, morphism_to_subgroupoid, validate_functor
from frobgpd.structures import Semigroupoid

from conftest import cyclic_group, discrete_groupoid, pair_groupoid, random_groupoid, z2, z2_frob


def band():
    return Semigroupoid.one_object("ae", {("e", "e"): "e", ("a", "a"): "a", ("e", "a"): "a", ("a", "e"): "a"})


def chain():
    # f, g : x -> y parallel, h : y -> z, with hf = p and hg = q
    return Semigroupoid("xyz", "fghpq", {"f": "x", "g": "x", "h": "y", "p": "x", "q": "x"},
                        {"f": "y", "g": "y", "h": "z", "p": "z", "q": "z"}, {("h", "f"): "p", ("h", "g"): "q"})


def z2_semigroupoid():
    return cyclic_group(2, ["e", "g"]).base


# -- generated congruences ------------------------------------------------------------------

def test_empty_generators_give_discrete_partition():
    c = Q.generated_congruence(chain(), [])
    assert c.is_discrete() and len(c.classes) == 5


def test_single_generator_without_compositions():
    s = Semigroupoid("xy", "fg", {"f": "x", "g": "x"}, {"f": "y", "g": "y"}, {})
    assert set(Q.generated_congruence(s, [("f", "g")]).classes) == {frozenset("fg")}


def test_merge_propagates_through_composition():
    c = Q.generated_congruence(chain(), [("f", "g")])
    assert set(c.classes) == {frozenset("fg"), frozenset("pq"), frozenset("h")}
    assert Q.check_congruence(c).passed


def test_generator_with_mismatched_endpoints_is_rejected():
    with pytest.raises(PreconditionError) as info:
        Q.generated_congruence(chain(), [("f", "h")])
    assert info.value.witness == ("f", "h")


def test_idempotent_generators_examples():
    assert Q.idempotent_generators(z2_semigroupoid()) == set()
    assert Q.idempotent_generators(discrete_groupoid("ab").base) == set()
    assert Q.idempotent_generators(band()) == {("a", "e")}


# -- collapse -------------------------------------------------------------------------------

def test_discrete_collapse_is_a_renamed_copy():
    s = chain()
    q = Q.collapse(s, Q.generated_congruence(s, []))
    assert q == s.relabel(morphisms={f: f"[{f}]" for f in s.morphisms})


def test_full_congruence_on_one_object_semigroup():
    s = z2_semigroupoid()
    q = Q.collapse(s, Q.generated_congruence(s, [("e", "g")]))
    assert list(q.morphisms) == ["[e]"] and dict(q.comp) == {("[e]", "[e]"): "[e]"}


def test_band_collapses_to_one_morphism():
    s = band()
    q = Q.collapse(s, Q.generated_congruence(s, Q.idempotent_generators(s)))
    assert list(q.morphisms) == ["[a]"]
    assert S.validate_semigroupoid(q).passed


def test_collapse_rejects_foreign_congruence():
    with pytest.raises(PreconditionError):
        Q.collapse(band(), Q.generated_congruence(chain(), []))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_collapse_preserves_validity_regularity_and_lc(n):
    for s in enumerate_regular(n).found:
        if not S.is_locally_cancellative(s)[0]:
            continue
        q = Q.collapse(s, Q.idempotent_congruence(s))
        assert S.validate_semigroupoid(q).passed
        assert S.is_regular(q)[0] and S.is_locally_cancellative(q)[0]


# -- the reflection F ---------------------------------------------------------------------------

def test_F_on_z2_and_pair_groupoid():
    g = Q.F_functor(z2_semigroupoid())
    assert sorted(g.morphisms) == ["[e]", "[g]"] and g.inv["[g]"] == "[g]"
    pg = pair_groupoid("xy")
    assert Q.F_functor(S.forget(pg)) == pg.relabel(morphisms={f: f"[{f}]" for f in pg.morphisms})


def test_F_refuses_the_band():
    # the band is regular but not locally cancellative
    assert S.is_regular(band())[0]
    with pytest.raises(PreconditionError):
        Q.F_functor(band())
    with pytest.raises(PreconditionError):
        Q.unit(band())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_idempotent_congruence_is_discrete_on_small_lc_regular(n):
    # no strict collapse occurs at these sizes
    for s in enumerate_regular(n).found:
        if S.is_locally_cancellative(s)[0]:
            assert Q.idempotent_congruence(s).is_discrete()
            assert len(Q.F_functor(s).morphisms) == len(s.morphisms)


# -- unit, counit, triangles, naturality ----------------------------------------------------------

def test_unit_on_z2_is_the_projection():
    u = Q.unit(z2_semigroupoid())
    assert u.on_morphisms == {"e": "[e]", "g": "[g]"}
    assert all(Q.triangles(z2_semigroupoid()).values())


def test_counit_is_an_isomorphism_on_random_groupoids(rng):
    for _ in range(40):
        g = random_groupoid(rng)
        c = Q.counit(g)
        assert sorted(c.on_morphisms.values()) == sorted(g.morphisms)
        assert all(Q.triangles(g).values())
        rep = Q.unit_and_counit(g)
        assert set(rep) == {"unit", "unit-graph", "triangles", "counit"}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_triangles_on_every_lc_regular_semigroupoid(n):
    for s in enumerate_regular(n).found:
        if S.is_locally_cancellative(s)[0]:
            assert all(Q.triangles(s).values())


def test_naturality_on_the_pair_groupoid_swap():
    pg = pair_groupoid("xy")
    swap = {"x": "y", "y": "x"}
    phi = Functor(pg, pg, swap, {f: swap[f[0]] + swap[f[1]] for f in pg.morphisms})
    assert validate_functor(phi).passed
    assert Q.naturality(phi) == {"unit": True, "counit": True}
    assert Q.F_on_functor(phi).on_morphisms == {f"[{f}]": f"[{phi.on_morphisms[f]}]" for f in pg.morphisms}


def test_F_on_submorphism_lands_in_product():
    R = morphism_to_subgroupoid(identity_morphism(z2_frob()))
    FR = Q.F_on_submorphism(R)
    assert isinstance(FR, SubMorphism)
    assert len(FR.sub.morphisms) == 2
    assert S.is_subgroupoid(FR.sub, S.product_groupoid(FR.source, FR.target))


# -- the composite quotient for H*-algebras ---------------------------------------------------

def test_corollary_on_z2():
    out = Q.corollary_quotient(as_hstar(z2()))
    assert out.base == z2().relabel({"e": "[e]", "g": "[g]"})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_corollary_routes_agree(n):
    for h in enumerate_hstar(n).found:
        direct = Q.corollary_quotient_direct(h)
        composite = Q.corollary_quotient_composite(h)
        assert direct == composite.base
        assert Q.corollary_quotient(h).base == direct


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_generator_definitions_give_the_same_partition(n):
    for h in enumerate_hstar(n).found:
        s = hstar_to_semigroupoid(h)
        assert set(Q.corollary_partition(h)) == set(Q.idempotent_congruence(s).classes)


def test_frobenius_algebra_is_fixed_up_to_renaming():
    for f in enumerate_frobenius(3).found:
        out = Q.corollary_quotient(as_hstar(f.base))
        assert out == groupoid_to_frob(frob_to_groupoid(f).relabel(
            morphisms={x: f"[{x}]" for x in f.carrier}, objects={x: f"[{x}]" for x in frob_to_groupoid(f).objects}))
    assert Q.corollary_quotient(as_hstar(z2_frob().base)).unit_set == {"[e]"}
