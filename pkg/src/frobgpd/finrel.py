"""Finite sets and relations: the dagger compact closed category Rel.

Relations are stored as read-only boolean incidence matrices indexed by
the canonical element order of their domain and codomain, so that
composition is a boolean matrix product and equality is bit-exact.

Products are strictly associative: ``(X x Y) x Z`` and ``X x (Y x Z)``
are the same :class:`ProductSet`, whose elements are flat tuples of atoms.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

import numpy as np

from .errors import CompositionError

UNIT_ATOM = "*"


def _flatten(element) -> tuple:
    if isinstance(element, tuple):
        out: list = []
        for part in element:
            out.extend(_flatten(part))
        return tuple(out)
    return (element,)


class FinSet:
    """A finite set of string atoms, kept in sorted order."""

    __slots__ = ("_elements", "label", "_index")

    def __init__(self, elements: Iterable[str] = (), label: str | None = None):
        atoms = list(elements)
        for a in atoms:
            if not isinstance(a, str):
                raise TypeError(f"atoms must be strings, got {a!r}")
        if len(set(atoms)) != len(atoms):
            dup = sorted({a for a in atoms if atoms.count(a) > 1})
            raise ValueError(f"duplicate atoms: {dup}")
        self._elements = tuple(sorted(atoms))
        self.label = label
        self._index = None

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def factors(self) -> tuple["FinSet", ...]:
        return (self,)

    @property
    def key(self):
        return ("set", self._elements)

    def index(self, element) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        key = element
        if isinstance(self, ProductSet):
            key = _flatten(element)
        try:
            return self._index[key]
        except (KeyError, TypeError):
            raise ValueError(f"{element!r} is not an element of {self!r}") from None

    def __contains__(self, element) -> bool:
        try:
            self.index(element)
        except ValueError:
            return False
        return True

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSet) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        name = f"{self.label}=" if self.label else ""
        return f"{name}{{{', '.join(self._elements)}}}"


class ProductSet(FinSet):
    """Cartesian product of base sets; elements are tuples in lexicographic order."""

    __slots__ = ("_factors",)

    def __init__(self, *factors: FinSet):
        if not factors:
            raise ValueError("a product needs at least one factor")
        flat: list[FinSet] = []
        for f in factors:
            flat.extend(f.factors)
        self._factors = tuple(flat)
        self._elements = tuple(itertools.product(*(f.elements for f in flat)))
        self.label = None
        self._index = None

    @property
    def factors(self) -> tuple[FinSet, ...]:
        return self._factors

    @property
    def key(self):
        return ("prod", tuple(f.key for f in self._factors))

    def __repr__(self) -> str:
        return " x ".join(repr(f) for f in self._factors)


ONE = FinSet([UNIT_ATOM], label="1")


def product_set(*sets: FinSet) -> FinSet:
    """Strict product; a single factor is returned unchanged."""
    flat = [f for s in sets for f in s.factors]
    if len(flat) == 1:
        return flat[0]
    return ProductSet(*flat)


def element_pair(x, y) -> tuple:
    """The element of ``X x Y`` built from ``x`` and ``y`` (flattened)."""
    return _flatten(x) + _flatten(y)


def render_element(element) -> str:
    """Canonical text form: atoms verbatim, tuples as ``(a,b)``."""
    if isinstance(element, tuple):
        return "(" + ",".join(render_element(e) for e in element) + ")"
    return element


class Rel:
    """A relation ``dom -> cod`` backed by a boolean matrix."""

    __slots__ = ("dom", "cod", "_m", "_hash")

    def __init__(self, dom: FinSet, cod: FinSet, pairs: Iterable = ()):
        m = np.zeros((len(dom), len(cod)), dtype=bool)
        for x, y in pairs:
            m[dom.index(x), cod.index(y)] = True
        self._init(dom, cod, m)

    def _init(self, dom, cod, m):
        m.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self._m = m
        self._hash = None

    @classmethod
    def from_matrix(cls, dom: FinSet, cod: FinSet, matrix) -> "Rel":
        m = np.array(matrix, dtype=bool)
        if m.shape != (len(dom), len(cod)):
            raise ValueError(f"matrix shape {m.shape} does not match {len(dom)}x{len(cod)}")
        r = cls.__new__(cls)
        r._init(dom, cod, m)
        return r

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def graph(self) -> frozenset:
        return frozenset(self.pairs())

    def pairs(self) -> Iterator[tuple]:
        d, c = self.dom.elements, self.cod.elements
        for i, j in zip(*np.nonzero(self._m)):
            yield d[i], c[j]

    def image(self, x) -> tuple:
        row = self._m[self.dom.index(x)]
        return tuple(self.cod.elements[j] for j in np.flatnonzero(row))

    def __contains__(self, pair) -> bool:
        x, y = pair
        try:
            return bool(self._m[self.dom.index(x), self.cod.index(y)])
        except ValueError:
            return False

    def __len__(self) -> int:
        return int(self._m.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rel):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self._m.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"({render_element(x)},{render_element(y)})" for x, y in sorted(self.pairs()))
        return f"Rel({self.dom!r} -> {self.cod!r}: {{{body}}})"


def compose(s: Rel, r: Rel) -> Rel:
    """``s . r``: first ``r``, then ``s``."""
    if r.cod != s.dom:
        raise CompositionError(r.cod, s.dom)
    # float32 matmul goes through BLAS and is exact for these sizes (< 2**24)
    prod = r.matrix.astype(np.float32) @ s.matrix.astype(np.float32)
    return Rel.from_matrix(r.dom, s.cod, prod > 0)


def compose_all(*rels: Rel) -> Rel:
    """``compose_all(a, b, c) == a . b . c`` (rightmost applied first)."""
    out = rels[-1]
    for r in reversed(rels[:-1]):
        out = compose(r, out)
    return out


def converse(r: Rel) -> Rel:
    return Rel.from_matrix(r.cod, r.dom, r.matrix.T.copy())


def product(r1: Rel, r2: Rel) -> Rel:
    return Rel.from_matrix(product_set(r1.dom, r2.dom), product_set(r1.cod, r2.cod),
                           np.kron(r1.matrix, r2.matrix))


def product_all(*rels: Rel) -> Rel:
    out = rels[0]
    for r in rels[1:]:
        out = product(out, r)
    return out


def union(r: Rel, s: Rel) -> Rel:
    _same_type(r, s)
    return Rel.from_matrix(r.dom, r.cod, r.matrix | s.matrix)


def intersection(r: Rel, s: Rel) -> Rel:
    _same_type(r, s)
    return Rel.from_matrix(r.dom, r.cod, r.matrix & s.matrix)


def identity(X: FinSet) -> Rel:
    return Rel.from_matrix(X, X, np.eye(len(X), dtype=bool))


def empty(X: FinSet, Y: FinSet) -> Rel:
    return Rel.from_matrix(X, Y, np.zeros((len(X), len(Y)), dtype=bool))


def full(X: FinSet, Y: FinSet) -> Rel:
    return Rel.from_matrix(X, Y, np.ones((len(X), len(Y)), dtype=bool))


def partial_identity(X: FinSet, subset: Iterable) -> Rel:
    return Rel(X, X, ((x, x) for x in subset))


def diagonal(X: FinSet) -> Rel:
    """``X -> X x X``, ``x |-> (x, x)``."""
    n = len(X)
    m = np.zeros((n, n * n), dtype=bool)
    for i in range(n):
        m[i, i * n + i] = True
    return Rel.from_matrix(X, product_set(X, X), m)


def swap(X: FinSet, Y: FinSet) -> Rel:
    """``X x Y -> Y x X``."""
    nx, ny = len(X), len(Y)
    m = np.zeros((nx * ny, ny * nx), dtype=bool)
    for i in range(nx):
        for j in range(ny):
            m[i * ny + j, j * nx + i] = True
    return Rel.from_matrix(product_set(X, Y), product_set(Y, X), m)


def eta(X: FinSet) -> Rel:
    """The cup ``1 -> X x X``, ``{(*, (x, x))}``."""
    n = len(X)
    m = np.zeros((1, n * n), dtype=bool)
    for i in range(n):
        m[0, i * n + i] = True
    return Rel.from_matrix(ONE, product_set(X, X), m)


def name(r: Rel) -> Rel:
    """The transpose ``1 -> dom x cod`` of ``r``."""
    return Rel.from_matrix(ONE, product_set(r.dom, r.cod), r.matrix.reshape(1, -1))


def unname(p: Rel, X: FinSet, Y: FinSet) -> Rel:
    if p.dom != ONE or p.cod != product_set(X, Y):
        raise ValueError("not a point of X x Y")
    return Rel.from_matrix(X, Y, p.matrix.reshape(len(X), len(Y)))


def point(X: FinSet, subset: Iterable) -> Rel:
    """The point ``1 -> X`` picking out ``subset``."""
    return Rel(ONE, X, ((UNIT_ATOM, x) for x in subset))


def point_set(p: Rel) -> frozenset:
    return frozenset(y for _, y in p.pairs())


def all_points(X: FinSet) -> Iterator[Rel]:
    n = len(X)
    for bits in range(1 << n):
        m = np.array([[(bits >> i) & 1 for i in range(n)]], dtype=bool)
        yield Rel.from_matrix(ONE, X, m)


def left_unitor(X: FinSet) -> Rel:
    """``X -> 1 x X``."""
    return Rel.from_matrix(X, product_set(ONE, X), np.eye(len(X), dtype=bool))


def right_unitor(X: FinSet) -> Rel:
    """``X -> X x 1``."""
    return Rel.from_matrix(X, product_set(X, ONE), np.eye(len(X), dtype=bool))


def is_subrelation(r: Rel, s: Rel) -> bool:
    _same_type(r, s)
    return not bool((r.matrix & ~s.matrix).any())


def is_total(r: Rel) -> bool:
    return bool(r.matrix.any(axis=1).all()) if len(r.dom) else True


def is_single_valued(r: Rel) -> bool:
    return bool((r.matrix.sum(axis=1) <= 1).all())


def has_right_adjoint(r: Rel) -> bool:
    """The 2-categorical test: ``1 <= r^t . r`` and ``r . r^t <= 1``."""
    rt = converse(r)
    return is_subrelation(identity(r.dom), compose(rt, r)) and is_subrelation(compose(r, rt), identity(r.cod))


def is_function(r: Rel) -> bool:
    """Total and single-valued; cross-checked against :func:`has_right_adjoint`."""
    direct = is_total(r) and is_single_valued(r)
    if direct != has_right_adjoint(r):
        from .errors import InvariantViolation

        raise InvariantViolation("function test disagrees with right-adjoint test", r)
    return direct


def as_function(r: Rel) -> dict:
    if not is_function(r):
        raise ValueError("relation is not a function")
    return {x: y for x, y in r.pairs()}


def graph_of(mapping: dict, dom: FinSet, cod: FinSet) -> Rel:
    return Rel(dom, cod, mapping.items())


def _same_type(r: Rel, s: Rel) -> None:
    if r.dom != s.dom or r.cod != s.cod:
        raise CompositionError(r, s, f"relations are not parallel: {r.dom!r}->{r.cod!r} vs {s.dom!r}->{s.cod!r}")
