"""Exhaustive censuses of small structures.

Algebra scans run over partial single-valued tables on the carrier
``a, b, c, ...`` (every (M)-satisfying multiplication has this form);
structure scans run over all source/target assignments, with objects
named ``x0, x1, ...`` in order of first appearance, and all associative
composition tables for each.

Candidates surviving a kernel are re-checked with the full axiom
checkers, so the kernels only prune.
"""

from __future__ import annotations

import string
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import kernels
from .algebra import (FrobAlgebra, HStarAlgebra, MulCandidate, as_frobenius, check_A, check_F, check_H, check_M,
                      check_hopf_compatibility, find_unit)
from .correspond import frob_to_groupoid, groupoid_to_frob, hstar_to_semigroupoid
from .errors import InvariantViolation, PreconditionError
from .structures import (Groupoid, Semigroupoid, is_locally_cancellative, is_regular, promote_to_groupoid,
                         validate_groupoid, validate_semigroupoid)

MAX_ALGEBRA_SIZE = 3
MAX_MORPHISMS = 4
CHUNK = 1 << 14


def atoms(n: int) -> list[str]:
    return list(string.ascii_lowercase[:n])


@dataclass
class CensusReport:
    kind: str
    size: int
    scanned: int
    found: list = field(repr=False)
    seconds: float = 0.0
    backend: str = kernels.BACKEND

    @property
    def count(self) -> int:
        return len(self.found)


def table_to_candidate(n: int, T: list[int]) -> MulCandidate:
    A = atoms(n)
    return MulCandidate.from_triples(A, [(A[i], A[j], A[T[i * n + j]])
                                         for i in range(n) for j in range(n) if T[i * n + j] >= 0])


def _scan_range(args) -> list[int]:
    n, start, stop, mode = args
    return kernels.scan_tables(n, start, stop, mode)


def _ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def _scan(n: int, mode: int, jobs: int) -> tuple[list[int], int]:
    if not 1 <= n <= MAX_ALGEBRA_SIZE:
        raise PreconditionError(f"algebra scans are exhaustive only for 1 <= n <= {MAX_ALGEBRA_SIZE}", n)
    total = (n + 1) ** (n * n)
    tasks = [(n, s, e, mode) for s, e in _ranges(total, CHUNK)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_range, tasks))
    else:
        parts = [_scan_range(t) for t in tasks]
    return sorted(i for part in parts for i in part), total


def enumerate_frobenius(n: int, jobs: int = 1) -> CensusReport:
    t0 = time.perf_counter()
    hits, total = _scan(n, kernels.MODE_FROBENIUS, jobs)
    found = []
    for index in hits:
        c = table_to_candidate(n, kernels.decode_table(n, index))
        if not (check_M(c) and check_A(c) and check_F(c) and find_unit(c) is not None):
            raise InvariantViolation("kernel accepted a candidate the checkers reject", c.triples())
        found.append(as_frobenius(c))
    return CensusReport("frobenius", n, total, found, time.perf_counter() - t0)


def enumerate_hstar(n: int, jobs: int = 1) -> CensusReport:
    t0 = time.perf_counter()
    hits, total = _scan(n, kernels.MODE_HSTAR, jobs)
    found = []
    for index in hits:
        c = table_to_candidate(n, kernels.decode_table(n, index))
        if not (check_M(c) and check_A(c) and check_H(c)):
            raise InvariantViolation("kernel accepted a candidate the checkers reject", c.triples())
        found.append(HStarAlgebra(c))
    return CensusReport("hstar", n, total, found, time.perf_counter() - t0)


# -- structure side -----------------------------------------------------------

def restricted_growth_strings(length: int):
    """Set partitions of ``range(length)`` as block labels in first-appearance order."""
    if length == 0:
        yield ()
        return
    word = [0] * length

    def rec(i: int, top: int):
        if i == length:
            yield tuple(word)
            return
        for b in range(top + 2):
            word[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


def _structures_for(args) -> list[tuple]:
    n, rgs = args
    src, tgt = list(rgs[:n]), list(rgs[n:])
    return [(rgs, tuple(T)) for T in kernels.semigroupoid_tables(n, src, tgt)]


def build_semigroupoid(n: int, rgs: tuple, T: tuple) -> Semigroupoid:
    M = atoms(n)
    objs = [f"x{k}" for k in range(max(rgs) + 1)]
    src = {M[i]: objs[rgs[i]] for i in range(n)}
    tgt = {M[i]: objs[rgs[n + i]] for i in range(n)}
    comp = {(M[g], M[f]): M[T[g * n + f]] for g in range(n) for f in range(n) if T[g * n + f] >= 0}
    return Semigroupoid(objs, M, src, tgt, comp)


def enumerate_semigroupoids(n: int, jobs: int = 1) -> CensusReport:
    if not 1 <= n <= MAX_MORPHISMS:
        raise PreconditionError(f"structure scans are exhaustive only for 1 <= n <= {MAX_MORPHISMS}", n)
    t0 = time.perf_counter()
    tasks = [(n, rgs) for rgs in restricted_growth_strings(2 * n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_structures_for, tasks, chunksize=64))
    else:
        parts = [_structures_for(t) for t in tasks]
    found = []
    for part in parts:
        for rgs, T in part:
            s = build_semigroupoid(n, rgs, T)
            if not validate_semigroupoid(s).passed:
                raise InvariantViolation("kernel produced an invalid semigroupoid", s.key)
            found.append(s)
    return CensusReport("semigroupoid", n, len(tasks), found, time.perf_counter() - t0)


def _filter(report: CensusReport, kind: str, keep) -> CensusReport:
    t0 = time.perf_counter()
    found = [y for y in (keep(s) for s in report.found) if y is not None]
    return CensusReport(kind, report.size, report.scanned, found, report.seconds + time.perf_counter() - t0)


def _lc_regular(s: Semigroupoid) -> bool:
    return is_regular(s)[0] and is_locally_cancellative(s)[0]


def enumerate_lrsgpd(n: int, jobs: int = 1, base: CensusReport | None = None) -> CensusReport:
    base = base or enumerate_semigroupoids(n, jobs)
    return _filter(base, "lrsgpd", lambda s: s if _lc_regular(s) else None)


def enumerate_groupoids(n: int, jobs: int = 1, base: CensusReport | None = None) -> CensusReport:
    """Semigroupoids that carry (necessarily unique) identities and inverses."""
    base = base or enumerate_semigroupoids(n, jobs)

    def keep(s):
        if not _lc_regular(s):
            return None
        g = promote_to_groupoid(s)
        if g is not None and not validate_groupoid(g).passed:
            raise InvariantViolation("promoted structure fails groupoid validation", s.key)
        return g

    return _filter(base, "groupoid", keep)


def enumerate_regular(n: int, jobs: int = 1, base: CensusReport | None = None) -> CensusReport:
    base = base or enumerate_semigroupoids(n, jobs)
    return _filter(base, "regular", lambda s: s if is_regular(s)[0] else None)


# -- canonical forms and cross checks -------------------------------------------

def canonical_objects(g: Groupoid | Semigroupoid) -> Groupoid | Semigroupoid:
    """Rename objects to ``x0, x1, ...`` by first appearance (sources, then targets)."""
    base = g.base if isinstance(g, Groupoid) else g
    order: list[str] = []
    for table in (base.src, base.tgt):
        for f in base.morphisms:
            if table[f] not in order:
                order.append(table[f])
    return g.relabel({x: f"x{k}" for k, x in enumerate(order)})


def cross_census(n: int, jobs: int = 1, semigroupoids: CensusReport | None = None) -> dict:
    """Bijection between Frobenius algebras and groupoids with ``n`` morphisms,
    and the H*/semigroupoid adjunction on every enumerated instance."""
    from .morphisms import counit_is_iso, hstar_triangles, unit_is_iso

    frob = enumerate_frobenius(n, jobs)
    sg = semigroupoids or enumerate_semigroupoids(n, jobs)
    gpds = enumerate_groupoids(n, base=sg)
    images = [canonical_objects(frob_to_groupoid(f)) for f in frob.found]
    gset = set(gpds.found)
    injective = len(set(images)) == len(images)
    onto = set(images) == gset
    back = all(groupoid_to_frob(frob_to_groupoid(f)) == f for f in frob.found)

    hstar = enumerate_hstar(n, jobs)
    findings = []
    unit_ok = counit_ok = triangles_ok = True
    for h in hstar.found:
        tri = hstar_triangles(h)
        triangles_ok &= all(tri.values())
        u = unit_is_iso(h)
        c = counit_is_iso(hstar_to_semigroupoid(h))
        if not u or not c:
            findings.append({"algebra": h.base.triples(), "unit_iso": u, "counit_iso": c})
        unit_ok &= u
        counit_ok &= c
    lrs = enumerate_lrsgpd(n, base=sg)
    for s in lrs.found:
        if not counit_is_iso(s):
            findings.append({"semigroupoid": s.key, "counit_iso": False})
    return {
        "size": n,
        "frobenius": frob.count,
        "groupoids": gpds.count,
        "hstar": hstar.count,
        "lrsgpd": lrs.count,
        "bijection": injective and onto and back,
        "frobenius_in_hstar": {f.base for f in frob.found} <= {h.base for h in hstar.found},
        "triangles": triangles_ok,
        "all_units_iso": unit_ok,
        "all_counits_iso": counit_ok,
        "findings": findings,
    }


def hopf_scan(n: int, jobs: int = 1) -> int:
    """Number of Frobenius algebras on ``n`` atoms passing the Hopf-compatibility test."""
    return sum(1 for f in enumerate_frobenius(n, jobs).found if check_hopf_compatibility(f))


def frobenius_via_groupoids(n: int, jobs: int = 1) -> list[FrobAlgebra]:
    """The algebra census at sizes beyond the direct scan, through the groupoid side."""
    return [groupoid_to_frob(g) for g in enumerate_groupoids(n, jobs).found]


ENUMERATORS = {
    "frobenius": enumerate_frobenius,
    "hstar": enumerate_hstar,
    "semigroupoid": enumerate_semigroupoids,
    "groupoid": enumerate_groupoids,
    "lrsgpd": enumerate_lrsgpd,
}
