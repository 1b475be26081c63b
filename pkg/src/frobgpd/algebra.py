"""Candidate multiplications ``m : X x X -> X`` in Rel and their axioms.

Every axiom is decided twice: once categorically, by evaluating the
defining equation with :mod:`frobgpd.finrel`, and once elementwise on the
(possibly multivalued) product table.  The public ``check_*`` functions
return the common answer and raise :class:`InvariantViolation` if the two
ever disagree.

Products are read as ``((x, y), z) in m  <=>  z = xy``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable

from . import finrel as fr
from .errors import InvariantViolation, PreconditionError
from .finrel import FinSet, Rel

# Carriers above this size skip the categorical cross-checks (X^3 grows fast).
CATEGORICAL_LIMIT = 8
# Subset-quantified checks are exhaustive only up to this size.
SUBSET_LIMIT = 4

AXIOMS = ("M", "A", "F", "U", "H")


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class MulCandidate:
    """A carrier together with an arbitrary relation ``m : X x X -> X``."""

    carrier: FinSet
    m: Rel

    def __post_init__(self):
        if self.m.dom != fr.product_set(self.carrier, self.carrier) or self.m.cod != self.carrier:
            raise ValueError("multiplication must be a relation X x X -> X over the carrier")

    @classmethod
    def from_triples(cls, elements: Iterable[str], triples: Iterable[tuple]) -> "MulCandidate":
        X = elements if isinstance(elements, FinSet) else FinSet(elements)
        XX = fr.product_set(X, X)
        return cls(X, Rel(XX, X, (((x, y), z) for x, y, z in triples)))

    @classmethod
    def from_table(cls, elements: Iterable[str], table: dict) -> "MulCandidate":
        return cls.from_triples(elements, ((x, y, z) for (x, y), z in table.items()))

    @property
    def n(self) -> int:
        return len(self.carrier)

    @property
    def atoms(self) -> tuple:
        return self.carrier.elements

    def triples(self) -> list[tuple]:
        return sorted((x, y, z) for (x, y), z in self.m.pairs())

    @cached_property
    def masks(self) -> tuple[tuple[int, ...], ...]:
        """``masks[i][j]`` is the bitmask of all products of atoms ``i`` and ``j``."""
        n = self.n
        rows = self.m.matrix
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                mask = 0
                for k in range(n):
                    if rows[i * n + j, k]:
                        mask |= 1 << k
                row.append(mask)
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def single_valued(self) -> bool:
        return all(mask & (mask - 1) == 0 for row in self.masks for mask in row)

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        """Index table with ``-1`` for undefined products; needs single-valuedness."""
        if not self.single_valued:
            raise PreconditionError("multiplication is not single-valued")
        return tuple(tuple(mask.bit_length() - 1 for mask in row) for row in self.masks)

    def mul(self, x: str, y: str) -> str | None:
        """Kleene product: the atom ``xy`` or ``None`` when undefined."""
        k = self.table[self.carrier.index(x)][self.carrier.index(y)]
        return None if k < 0 else self.atoms[k]

    def products(self, x: str, y: str) -> frozenset:
        mask = self.masks[self.carrier.index(x)][self.carrier.index(y)]
        return frozenset(self.atoms[k] for k in _bits(mask))

    def partial_product(self) -> dict:
        """The partial map ``(x, y) -> xy`` (single-valued candidates only)."""
        T = self.table
        A = self.atoms
        return {(A[i], A[j]): A[T[i][j]] for i in range(self.n) for j in range(self.n) if T[i][j] >= 0}

    def relabel(self, mapping: dict) -> "MulCandidate":
        return MulCandidate.from_triples(
            [mapping[a] for a in self.atoms],
            [(mapping[x], mapping[y], mapping[z]) for x, y, z in self.triples()])


def _t3(T, a: int, b: int, c: int) -> int:
    """Left-bracketed Kleene triple product ``(ab)c`` on an index table."""
    ab = T[a][b]
    return -1 if ab < 0 else T[ab][c]


def _subset_atoms(c: MulCandidate, mask: int) -> frozenset:
    return frozenset(c.atoms[i] for i in _bits(mask))


def _mask_of(c: MulCandidate, subset: Iterable[str]) -> int:
    mask = 0
    for a in subset:
        mask |= 1 << c.carrier.index(a)
    return mask


def _agree(name: str, categorical: bool, elementwise: bool, c: MulCandidate) -> bool:
    if categorical != elementwise:
        raise InvariantViolation(f"categorical and elementwise {name} disagree "
                                 f"(categorical={categorical}, elementwise={elementwise})", c.triples())
    return elementwise


# -- (M) ---------------------------------------------------------------------

def check_M_categorical(c: MulCandidate) -> bool:
    return fr.compose(c.m, fr.converse(c.m)) == fr.identity(c.carrier)


def check_M_elementwise(c: MulCandidate) -> bool:
    covered = 0
    for row in c.masks:
        for mask in row:
            covered |= mask
    return c.single_valued and covered == (1 << c.n) - 1


def check_M(c: MulCandidate) -> bool:
    """``m . m^t = 1``: single-valued, and every element is a product."""
    ew = check_M_elementwise(c)
    if c.n <= CATEGORICAL_LIMIT:
        return _agree("(M)", check_M_categorical(c), ew, c)
    return ew


# -- (A) ---------------------------------------------------------------------

def check_A_categorical(c: MulCandidate) -> bool:
    one = fr.identity(c.carrier)
    return fr.compose(c.m, fr.product(one, c.m)) == fr.compose(c.m, fr.product(c.m, one))


def check_A_elementwise(c: MulCandidate) -> bool:
    P = c.masks
    n = c.n

    def left(mask, h):
        out = 0
        for y in _bits(mask):
            out |= P[y][h]
        return out

    def right(f, mask):
        out = 0
        for y in _bits(mask):
            out |= P[f][y]
        return out

    for f, g, h in cartesian(range(n), repeat=3):
        if left(P[f][g], h) != right(f, P[g][h]):
            return False
    return True


def check_A(c: MulCandidate) -> bool:
    """``(fg)h = f(gh)`` as a Kleene equation (set-valued for multivalued ``m``)."""
    ew = check_A_elementwise(c)
    if c.n <= CATEGORICAL_LIMIT:
        return _agree("(A)", check_A_categorical(c), ew, c)
    return ew


# -- (F) ---------------------------------------------------------------------

def check_F_categorical(c: MulCandidate) -> bool:
    one = fr.identity(c.carrier)
    mt = fr.converse(c.m)
    left = fr.compose(fr.product(one, c.m), fr.product(mt, one))
    middle = fr.compose(mt, c.m)
    right = fr.compose(fr.product(c.m, one), fr.product(one, mt))
    return left == middle == right


def check_F_elementwise(c: MulCandidate) -> bool:
    """``ab = cd  <=>  exists e. b = ed, c = ae  <=>  exists e. d = eb, a = ce``.

    Here ``ab = cd`` means both sides defined and equal (the relation
    ``m^t . m`` relates ``(a, b)`` and ``(c, d)`` only then).
    """
    P = c.masks
    n = c.n
    for a, b, cc, d in cartesian(range(n), repeat=4):
        same = (P[a][b] & P[cc][d]) != 0
        via_right = any((P[e][d] >> b) & 1 and (P[a][e] >> cc) & 1 for e in range(n))
        via_left = any((P[e][b] >> d) & 1 and (P[cc][e] >> a) & 1 for e in range(n))
        if not (same == via_right == via_left):
            return False
    return True


def check_F(c: MulCandidate) -> bool:
    ew = check_F_elementwise(c)
    if c.n <= CATEGORICAL_LIMIT:
        return _agree("(F)", check_F_categorical(c), ew, c)
    return ew


# -- (U) ---------------------------------------------------------------------

def _unit_mask(c: MulCandidate) -> int | None:
    P = c.masks
    n = c.n
    U = 0
    for u in range(n):
        if all(P[f][u] & ~(1 << f) == 0 and P[u][f] & ~(1 << f) == 0 for f in range(n)):
            U |= 1 << u
    for f in range(n):
        if not any((P[f][u] >> f) & 1 for u in _bits(U)):
            return None
        if not any((P[u][f] >> f) & 1 for u in _bits(U)):
            return None
    return U


def find_unit_elementwise(c: MulCandidate) -> frozenset | None:
    """The largest set of two-sided partial units, if it witnesses (U).

    Any witness of (U) is contained in this set, and a short argument shows
    two witnesses coincide, so this is *the* unit whenever one exists.
    """
    U = _unit_mask(c)
    return None if U is None else _subset_atoms(c, U)


def is_unit_categorical(c: MulCandidate, u: Rel) -> bool:
    one = fr.identity(c.carrier)
    lhs = fr.compose_all(c.m, fr.product(u, one), fr.left_unitor(c.carrier))
    rhs = fr.compose_all(c.m, fr.product(one, u), fr.right_unitor(c.carrier))
    return lhs == one and rhs == one


def units_categorical(c: MulCandidate) -> list[frozenset]:
    """Every point ``u : 1 -> X`` satisfying the (U) equations (exhaustive)."""
    return [fr.point_set(u) for u in fr.all_points(c.carrier) if is_unit_categorical(c, u)]


def find_unit(c: MulCandidate) -> frozenset | None:
    U = find_unit_elementwise(c)
    if c.n <= 6:
        found = units_categorical(c)
        expected = [] if U is None else [U]
        if found != expected:
            raise InvariantViolation("categorical and elementwise (U) disagree", (found, U))
    elif U is not None and not is_unit_categorical(c, fr.point(c.carrier, U)):
        raise InvariantViolation("elementwise unit fails the (U) equations", U)
    return U


def check_U(c: MulCandidate) -> bool:
    return find_unit(c) is not None


# -- pseudoinverses and the canonical involution ------------------------------

def _require_M(c: MulCandidate) -> None:
    if not check_M_elementwise(c):
        raise PreconditionError("products are not well-defined: (M) fails")


def _pseudo_mask(c: MulCandidate, a: int) -> int:
    T = c.table
    mask = 0
    for x in range(c.n):
        if _t3(T, a, x, a) == a and _t3(T, x, a, x) == x:
            mask |= 1 << x
    return mask


def pseudoinverses(c: MulCandidate, a: str) -> frozenset:
    """``{x | axa = a and xax = x}`` with all products defined."""
    _require_M(c)
    return _subset_atoms(c, _pseudo_mask(c, c.carrier.index(a)))


def star_set(c: MulCandidate, A: Iterable[str]) -> frozenset:
    """Common pseudoinverses: ``{x | axa = a and xax = x for every a in A}``."""
    _require_M(c)
    mask = (1 << c.n) - 1
    for a in A:
        mask &= _pseudo_mask(c, c.carrier.index(a))
    return _subset_atoms(c, mask)


def _involution_masks(c: MulCandidate) -> list[int]:
    """Image of every subset (as bitmask) under the canonical involution."""
    singles = [_pseudo_mask(c, a) for a in range(c.n)]
    out = []
    for A in range(1 << c.n):
        img = 0
        for a in _bits(A):
            img |= singles[a]
        out.append(img)
    return out


def canonical_involution(c: MulCandidate, A: Iterable[str]) -> frozenset:
    """``A |-> union of star_set({a}) over a in A``: the witness used for (H).

    On singletons this agrees with :func:`star_set`.
    """
    _require_M(c)
    img = _involution_masks(c)[_mask_of(c, A)]
    return _subset_atoms(c, img)


def involution_is_involutive(c: MulCandidate) -> bool:
    _require_M(c)
    img = _involution_masks(c)
    return all(img[img[A]] == A for A in range(1 << c.n))


# -- (H) ---------------------------------------------------------------------

def _h_holds_for(c: MulCandidate, A: int, B: int) -> bool:
    """Both (H) equations for the point ``A`` with proposed image ``B``."""
    T = c.table
    n = c.n
    As = list(_bits(A))
    Bs = list(_bits(B))
    for x in range(n):
        for y in range(n):
            if any(T[x][a] == y for a in As) != any(T[y][b] == x for b in Bs):
                return False
            if any(T[a][x] == y for a in As) != any(T[b][y] == x for b in Bs):
                return False
    return True


def _require_MA(c: MulCandidate) -> None:
    if not check_M_elementwise(c):
        raise PreconditionError("(H) needs (M)")
    if not check_A_elementwise(c):
        raise PreconditionError("(H) needs (A)")


def check_H_singletons(c: MulCandidate) -> bool:
    _require_MA(c)
    return all(_h_holds_for(c, 1 << a, _pseudo_mask(c, a)) for a in range(c.n))


def check_H_subsets(c: MulCandidate) -> bool:
    """The concrete form over every subset ``A`` with the canonical involution."""
    _require_MA(c)
    img = _involution_masks(c)
    return all(_h_holds_for(c, A, img[A]) for A in range(1 << c.n))


def check_H_categorical(c: MulCandidate) -> bool:
    """``m.(1 x A*) = (1 x A^t).m^t`` and its mirror, for every point ``A``."""
    _require_MA(c)
    X = c.carrier
    one = fr.identity(X)
    mt = fr.converse(c.m)
    rho, lam = fr.right_unitor(X), fr.left_unitor(X)
    img = _involution_masks(c)
    for A in range(1 << c.n):
        a = fr.point(X, _subset_atoms(c, A))
        b = fr.point(X, _subset_atoms(c, img[A]))
        at = fr.converse(a)
        if fr.compose_all(c.m, fr.product(one, b), rho) != fr.compose_all(fr.converse(rho), fr.product(one, at), mt):
            return False
        if fr.compose_all(c.m, fr.product(b, one), lam) != fr.compose_all(fr.converse(lam), fr.product(at, one), mt):
            return False
    return True


def check_H_theorem_backed(c: MulCandidate) -> bool:
    """Singleton (H) plus: the induced semigroupoid exists and is regular and
    locally cancellative."""
    if not check_H_singletons(c):
        return False
    from .correspond import induced_semigroupoid
    from .structures import is_locally_cancellative, is_regular, validate_semigroupoid

    try:
        g = induced_semigroupoid(c)
    except PreconditionError:
        return False
    return validate_semigroupoid(g).passed and is_regular(g)[0] and is_locally_cancellative(g)[0]


def check_H_implication_form(c: MulCandidate) -> bool:
    """The one-directional variant ``xa defined => exists a*. xaa* = x`` (and mirror).

    Kept for comparison only: it is strictly weaker than (H) (left-zero
    semigroups satisfy it but are not locally cancellative).
    """
    _require_MA(c)
    T = c.table
    n = c.n
    for a in range(c.n):
        stars = list(_bits(_pseudo_mask(c, a)))
        for x in range(n):
            if T[x][a] >= 0 and not any(_t3(T, x, a, s) == x for s in stars):
                return False
            if T[a][x] >= 0 and not any(T[s][T[a][x]] == x for s in stars):
                return False
    return True


def check_H(c: MulCandidate) -> bool:
    _require_MA(c)
    backed = check_H_theorem_backed(c)
    if c.n <= SUBSET_LIMIT:
        subsets = check_H_subsets(c)
        _agree("(H)", check_H_categorical(c), subsets, c)
        if subsets != backed:
            raise InvariantViolation("subset-quantified and theorem-backed (H) disagree", c.triples())
        return subsets
    if check_H_singletons(c) and not backed:
        raise InvariantViolation("(H) holds on singletons but the induced semigroupoid is not "
                                 "locally cancellative and regular", c.triples())
    return backed


def exists_H_involution(c: MulCandidate) -> bool:
    """Brute force: does *any* involution on points witness (H)?

    Exhaustive over involutions of the powerset; feasible for ``|X| <= 3``.
    """
    _require_MA(c)
    if c.n > 3:
        raise PreconditionError("involution search is limited to carriers of size <= 3")
    N = 1 << c.n
    ok = [[_h_holds_for(c, A, B) for B in range(N)] for A in range(N)]
    sigma = [-1] * N

    def search(A: int) -> bool:
        while A < N and sigma[A] >= 0:
            A += 1
        if A == N:
            return True
        for B in range(A, N):
            if sigma[B] < 0 and ok[A][B] and ok[B][A]:
                sigma[A], sigma[B] = B, A
                if search(A + 1):
                    return True
                sigma[A] = sigma[B] = -1
        return False

    return search(0)


# -- bundled structures ------------------------------------------------------

@dataclass(frozen=True)
class FrobAlgebra:
    """A relative Frobenius algebra: (M), (A), (F) and the unique unit set."""

    base: MulCandidate
    unit_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "unit_set", frozenset(self.unit_set))

    @property
    def carrier(self) -> FinSet:
        return self.base.carrier

    @property
    def m(self) -> Rel:
        return self.base.m

    @property
    def unit(self) -> Rel:
        return fr.point(self.carrier, self.unit_set)

    def mul(self, x, y):
        return self.base.mul(x, y)


@dataclass(frozen=True)
class HStarAlgebra:
    """A relative H*-algebra: (M), (A), (H) with the canonical involution."""

    base: MulCandidate

    @property
    def carrier(self) -> FinSet:
        return self.base.carrier

    @property
    def m(self) -> Rel:
        return self.base.m

    def mul(self, x, y):
        return self.base.mul(x, y)


def frobenius_failures(c: MulCandidate) -> list[str]:
    failed = []
    if not check_M(c):
        failed.append("M")
    if not check_A(c):
        failed.append("A")
    if not check_F(c):
        failed.append("F")
    if not check_U(c):
        failed.append("U")
    return failed


def as_frobenius(c: MulCandidate, unit_hint: Iterable[str] | None = None) -> FrobAlgebra:
    """Validate ``c`` and bundle it with its unit set."""
    failed = frobenius_failures(c)
    if failed:
        raise PreconditionError("not a relative Frobenius algebra", {"failed": failed})
    U = find_unit(c)
    if unit_hint is not None and frozenset(unit_hint) != U:
        raise PreconditionError("declared unit set differs from the computed one",
                                {"declared": sorted(unit_hint), "computed": sorted(U)})
    return FrobAlgebra(c, U)


def hstar_failures(c: MulCandidate) -> list[str]:
    failed = []
    if not check_M(c):
        failed.append("M")
    if not check_A(c):
        failed.append("A")
    if not failed and not check_H(c):
        failed.append("H")
    return failed


def as_hstar(c: MulCandidate) -> HStarAlgebra:
    failed = hstar_failures(c)
    if failed:
        raise PreconditionError("not a relative H*-algebra", {"failed": failed})
    return HStarAlgebra(c)


def frobenius_as_hstar(f: FrobAlgebra) -> HStarAlgebra:
    return as_hstar(f.base)


# -- Hopf compatibility -------------------------------------------------------

def hopf_equations(f: FrobAlgebra) -> dict[str, bool]:
    """Whether ``m^t`` and ``u^t`` are homomorphisms of the monoid ``(X, m, u)``."""
    X = f.carrier
    m, u = f.m, f.unit
    mt, ut = fr.converse(m), fr.converse(u)
    one = fr.identity(X)
    one_one = fr.product_set(fr.ONE, fr.ONE)
    split = fr.Rel(fr.ONE, one_one, [(fr.UNIT_ATOM, (fr.UNIT_ATOM, fr.UNIT_ATOM))])
    tensor = fr.compose(fr.product(m, m), fr.product_all(one, fr.swap(X, X), one))
    return {
        "comultiplication-preserves-multiplication":
            fr.compose(mt, m) == fr.compose(tensor, fr.product(mt, mt)),
        "comultiplication-preserves-unit": fr.compose(mt, u) == fr.compose(fr.product(u, u), split),
        "counit-preserves-multiplication": fr.compose(ut, m) == fr.compose(fr.converse(split), fr.product(ut, ut)),
        "counit-preserves-unit": fr.compose(ut, u) == fr.identity(fr.ONE),
    }


def check_hopf_compatibility(f: FrobAlgebra) -> bool:
    return all(hopf_equations(f).values())


# -- counterexamples for reports ------------------------------------------------

def axiom_witness(c: MulCandidate, axiom: str):
    """A concrete violation of ``axiom`` (one of M, A, F, U, H), or ``None``."""
    P, A, n = c.masks, c.atoms, c.n

    def atoms_of(mask):
        return [A[k] for k in _bits(mask)]

    if axiom == "M":
        for i in range(n):
            for j in range(n):
                if P[i][j] & (P[i][j] - 1):
                    return {"pair": [A[i], A[j]], "products": atoms_of(P[i][j])}
        covered = 0
        for row in P:
            for mask in row:
                covered |= mask
        missing = atoms_of(((1 << n) - 1) & ~covered)
        return {"not-a-product": missing[0]} if missing else None
    if axiom == "A":
        for f, g, h in cartesian(range(n), repeat=3):
            left = right = 0
            for y in _bits(P[f][g]):
                left |= P[y][h]
            for y in _bits(P[g][h]):
                right |= P[f][y]
            if left != right:
                return {"triple": [A[f], A[g], A[h]], "(fg)h": atoms_of(left), "f(gh)": atoms_of(right)}
        return None
    if axiom == "F":
        for a, b, cc, d in cartesian(range(n), repeat=4):
            same = (P[a][b] & P[cc][d]) != 0
            via_right = any((P[e][d] >> b) & 1 and (P[a][e] >> cc) & 1 for e in range(n))
            via_left = any((P[e][b] >> d) & 1 and (P[cc][e] >> a) & 1 for e in range(n))
            if not (same == via_right == via_left):
                return {"quadruple": [A[a], A[b], A[cc], A[d]]}
        return None
    if axiom == "U":
        U = 0
        for u in range(n):
            if all(P[f][u] & ~(1 << f) == 0 and P[u][f] & ~(1 << f) == 0 for f in range(n)):
                U |= 1 << u
        for f in range(n):
            if not any((P[f][u] >> f) & 1 for u in _bits(U)):
                return {"no-right-unit": A[f]}
            if not any((P[u][f] >> f) & 1 for u in _bits(U)):
                return {"no-left-unit": A[f]}
        return None
    if axiom == "H":
        if not (check_M_elementwise(c) and check_A_elementwise(c)):
            return {"precondition": "(M) and (A)"}
        img = _involution_masks(c)
        subsets = range(1 << n) if n <= SUBSET_LIMIT else [1 << a for a in range(n)]
        for S in subsets:
            if not _h_holds_for(c, S, img[S]):
                return {"subset": atoms_of(S), "involution": atoms_of(img[S])}
        if not check_H_theorem_backed(c):
            return {"induced-semigroupoid": "not locally cancellative and regular"}
        return None
    raise ValueError(f"unknown axiom {axiom!r}")
