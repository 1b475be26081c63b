from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobgpd import finrel as fr
from frobgpd.errors import CompositionError
from frobgpd.finrel import ONE, FinSet, Rel

from oracle import rcomp

X = FinSet("ab")
Y = FinSet("pqr")
Z = FinSet("uv")


def rel(dom, cod, pairs):
    return Rel(dom, cod, pairs)


@st.composite
def relations(draw, dom, cod):
    bits = draw(st.lists(st.booleans(), min_size=len(dom) * len(cod), max_size=len(dom) * len(cod)))
    return Rel.from_matrix(dom, cod, np.array(bits, dtype=bool).reshape(len(dom), len(cod)))


def test_identity_law_and_chain():
    r = rel(X, Y, [("a", "p"), ("b", "r")])
    assert fr.compose(fr.identity(Y), r) == r
    assert fr.compose(r, fr.identity(X)) == r
    A, B, C = FinSet("a"), FinSet("b"), FinSet("c")
    assert fr.compose(rel(B, C, [("b", "c")]), rel(A, B, [("a", "b")])) == rel(A, C, [("a", "c")])


def test_empty_absorbs():
    r = rel(X, Y, [("a", "p")])
    assert fr.compose(fr.empty(Y, Z), r) == fr.empty(X, Z)


def test_compose_type_mismatch():
    with pytest.raises(CompositionError):
        fr.compose(fr.identity(X), fr.identity(Y))


def test_converse_examples():
    A, B = FinSet("a"), FinSet("bc")
    r = rel(A, B, [("a", "b"), ("a", "c")])
    assert fr.converse(r) == rel(B, A, [("b", "a"), ("c", "a")])
    assert fr.converse(fr.converse(r)) == r
    assert fr.converse(fr.identity(X)) == fr.identity(X)


def test_product_examples():
    assert fr.product(fr.identity(X), fr.identity(Y)) == fr.identity(fr.product_set(X, Y))
    assert fr.product(fr.empty(X, Y), fr.full(Z, Z)) == fr.empty(fr.product_set(X, Z), fr.product_set(Y, Z))
    A, B = FinSet("a"), FinSet("bc")
    r = fr.product(rel(A, A, [("a", "a")]), rel(B, B, [("b", "c")]))
    assert set(r.pairs()) == {(("a", "b"), ("a", "c"))}


def test_products_are_strict():
    assert fr.product_set(fr.product_set(X, Y), Z) == fr.product_set(X, fr.product_set(Y, Z))
    assert fr.product_set(X) is X


def test_eta_and_name():
    assert set(fr.eta(X).pairs()) == {("*", ("a", "a")), ("*", ("b", "b"))}
    assert fr.name(fr.identity(X)) == fr.eta(X)
    r = rel(X, Y, [("a", "q"), ("b", "p")])
    assert fr.unname(fr.name(r), X, Y) == r


@pytest.mark.parametrize("S", [FinSet("a"), X, Y])
def test_snake_equations(S):
    # (eta^dagger x 1) . (1 x eta) = 1, bracketed with the unitors on both ends
    left = fr.compose_all(fr.converse(fr.left_unitor(S)), fr.product(fr.converse(fr.eta(S)), fr.identity(S)),
                          fr.product(fr.identity(S), fr.eta(S)), fr.right_unitor(S))
    right = fr.compose_all(fr.converse(fr.right_unitor(S)), fr.product(fr.identity(S), fr.converse(fr.eta(S))),
                           fr.product(fr.eta(S), fr.identity(S)), fr.left_unitor(S))
    assert left == fr.identity(S)
    assert right == fr.identity(S)


def test_subrelation_examples():
    r = rel(X, Y, [("a", "p")])
    assert fr.is_subrelation(fr.empty(X, Y), r)
    assert fr.is_subrelation(r, r)
    A, B = FinSet("a"), FinSet("bc")
    assert not fr.is_subrelation(rel(A, B, [("a", "b")]), rel(A, B, [("a", "c")]))


def test_is_function_examples():
    assert fr.is_function(fr.identity(X))
    assert not fr.is_function(fr.empty(X, Y))
    assert not fr.is_function(rel(FinSet("a"), FinSet("bc"), [("a", "b"), ("a", "c")]))


def test_is_function_matches_right_adjoint_on_random_relations():
    rng = random.Random(7)
    seen = {True: 0, False: 0}
    for _ in range(1000):
        dom = FinSet("abcd"[:rng.randint(1, 4)])
        cod = FinSet("wxyz"[:rng.randint(1, 4)])
        if rng.random() < 0.5:
            pairs = [(x, rng.choice(cod.elements)) for x in dom]
        else:
            pairs = [(x, y) for x in dom for y in cod if rng.random() < 0.4]
        r = rel(dom, cod, pairs)
        direct = all(len([y for y in cod if (x, y) in r]) == 1 for x in dom)
        assert fr.is_function(r) == direct == fr.has_right_adjoint(r)
        seen[direct] += 1
    assert seen[True] and seen[False]


def test_points():
    assert len(list(fr.all_points(Y))) == 8
    p = fr.point(Y, ["p", "r"])
    assert fr.point_set(p) == {"p", "r"}
    assert p.dom == ONE


def test_swap_and_diagonal():
    s = fr.swap(X, Y)
    assert fr.compose(fr.swap(Y, X), s) == fr.identity(fr.product_set(X, Y))
    assert set(fr.diagonal(X).pairs()) == {("a", ("a", "a")), ("b", ("b", "b"))}
    assert fr.is_function(fr.diagonal(X))


@settings(max_examples=60, deadline=None)
@given(relations(X, Y), relations(Y, Z), relations(Z, X))
def test_composition_matches_set_semantics(r, s, t):
    assert set(fr.compose(s, r).pairs()) == rcomp(set(s.pairs()), set(r.pairs()))
    assert fr.compose(t, fr.compose(s, r)) == fr.compose(fr.compose(t, s), r)


@settings(max_examples=60, deadline=None)
@given(relations(X, Y), relations(Y, Z))
def test_dagger_is_contravariant(r, s):
    assert fr.converse(fr.compose(s, r)) == fr.compose(fr.converse(r), fr.converse(s))


@settings(max_examples=40, deadline=None)
@given(relations(X, Y), relations(Y, Z), relations(Z, X), relations(X, Z))
def test_product_is_functorial(r, s, t, u):
    lhs = fr.compose(fr.product(s, u), fr.product(r, t))
    rhs = fr.product(fr.compose(s, r), fr.compose(u, t))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(relations(X, Y), relations(X, Y))
def test_lattice_operations(r, s):
    assert fr.is_subrelation(fr.intersection(r, s), r)
    assert fr.is_subrelation(r, fr.union(r, s))
    assert fr.is_subrelation(r, s) == (fr.union(r, s) == s)


@settings(max_examples=40, deadline=None)
@given(relations(X, Y))
def test_name_unname_round_trip(r):
    assert fr.unname(fr.name(r), X, Y) == r
    # the name factors through the cup: (1 x r) . eta
    via_eta = fr.compose(fr.product(fr.identity(X), r), fr.eta(X))
    assert via_eta == fr.name(r)


def test_large_composition_is_exact():
    big = FinSet([f"x{i}" for i in range(300)])
    full = fr.full(big, big)
    assert fr.compose(full, full) == full
    assert fr.compose(fr.identity(big), full) == full
