"""Independent brute-force oracles.

Everything here works on plain Python sets of tuples straight from the
definitions and shares no code with the package, so agreement between
the two is evidence rather than tautology.
"""

from __future__ import annotations

from itertools import product


# -- relations as sets of pairs --------------------------------------------------

def rcomp(s, r):
    """``s . r`` (first r, then s)."""
    by_src = {}
    for b, c in s:
        by_src.setdefault(b, set()).add(c)
    return {(a, c) for a, b in r for c in by_src.get(b, ())}


def conv(r):
    return {(b, a) for a, b in r}


def ident(X):
    return {(x, x) for x in X}


# -- algebra axioms, m a set of ((x, y), z) -------------------------------------------

def ax_M(X, m):
    return {(z, w) for p, z in m for q, w in m if p == q} == ident(X)


def ax_A(X, m):
    left = {((x, y, w), z) for (x, y), u in m for (u2, w), z in m if u == u2}
    right = {((x, y, w), z) for (y, w), u in m for (x, u2), z in m if u == u2}
    return left == right


def ax_F(X, m):
    middle = {(p, q) for p, z in m for q, w in m if z == w}
    left = {((a, b), (p, r)) for (p, q), a in m for (q2, b), r in m if q == q2}
    right = {((a, b), (r, q)) for (p, q), b in m for (a, p2), r in m if p == p2}
    return left == middle == right


def units(X, m):
    """Every subset ``U`` with ``m . (U x 1) = 1 = m . (1 x U)``."""
    xs = sorted(X)
    out = []
    for bits in product((0, 1), repeat=len(xs)):
        U = {x for x, b in zip(xs, bits) if b}
        left = {(x, z) for (e, x), z in m if e in U}
        right = {(x, z) for (x, e), z in m if e in U}
        if left == ident(X) == right:
            out.append(frozenset(U))
    return out


def ax_U(X, m):
    return bool(units(X, m))


def is_frobenius(X, m):
    return ax_M(X, m) and ax_A(X, m) and ax_F(X, m) and ax_U(X, m)


def products(m, x, y):
    return {z for (a, b), z in m if a == x and b == y}


def triple(m, x, y, z):
    return {w for u in products(m, x, y) for w in products(m, u, z)}


def pseudo(X, m, a):
    return {x for x in X if triple(m, a, x, a) == {a} and triple(m, x, a, x) == {x}}


def ax_H(X, m):
    """(H) with the involution ``A -> union of pseudoinverse sets``, over every subset."""
    xs = sorted(X)
    for bits in product((0, 1), repeat=len(xs)):
        A = {x for x, b in zip(xs, bits) if b}
        B = set().union(*(pseudo(X, m, a) for a in A)) if A else set()
        right_A = {(x, y) for (x, a), y in m if a in A}
        right_B = {(x, y) for (x, b), y in m if b in B}
        left_A = {(x, y) for (a, x), y in m if a in A}
        left_B = {(x, y) for (b, x), y in m if b in B}
        if conv(right_A) != right_B or conv(left_A) != left_B:
            return False
    return True


def is_hstar(X, m):
    return ax_M(X, m) and ax_A(X, m) and ax_H(X, m)


def all_relations(X):
    cells = [((x, y), z) for x in X for y in X for z in X]
    for bits in product((0, 1), repeat=len(cells)):
        yield {c for c, b in zip(cells, bits) if b}


def partial_tables(X):
    """All single-valued ``m``; (M) forces single-valuedness, so this covers every candidate."""
    pairs = [(x, y) for x in X for y in X]
    for choice in product([None] + list(X), repeat=len(pairs)):
        yield {(p, z) for p, z in zip(pairs, choice) if z is not None}


def census_algebras(n):
    X = "abcdefg"[:n]
    frob, hstar = [], []
    source = all_relations(X) if n <= 2 else partial_tables(X)
    for m in source:
        if not (ax_M(X, m) and ax_A(X, m)):
            continue
        if ax_F(X, m) and ax_U(X, m):
            frob.append(frozenset(m))
        if ax_H(X, m):
            hstar.append(frozenset(m))
    return frob, hstar


# -- semigroupoids as (src, tgt, comp) --------------------------------------------------

def object_assignments(n):
    """src/tgt maps of ``n`` morphisms, objects numbered by first use (sources first)."""
    def rec(prefix, used):
        if len(prefix) == 2 * n:
            yield tuple(prefix)
            return
        for o in range(used + 1):
            yield from rec(prefix + [o], max(used, o + 1))
    yield from rec([], 0)


def semigroupoid_tables(n, labels):
    src, tgt = labels[:n], labels[n:]
    M = range(n)
    cells = [(g, f) for g in M for f in M if src[g] == tgt[f]]
    options = {c: [h for h in M if src[h] == src[c[1]] and tgt[h] == tgt[c[0]]] for c in cells}
    table = {}
    found = []

    def ok():
        for (h, g) in table:
            hg = table[(h, g)]
            for f in M:
                if (g, f) in table and (hg, f) in table and (h, table[(g, f)]) in table:
                    if table[(hg, f)] != table[(h, table[(g, f)])]:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            found.append(dict(table))
            return
        c = cells[k]
        for h in options[c]:
            table[c] = h
            if ok():
                rec(k + 1)
            del table[c]

    if all(options[c] for c in cells):
        rec(0)
    return found


def all_semigroupoids(n):
    for labels in object_assignments(n):
        for comp in semigroupoid_tables(n, labels):
            yield labels[:n], labels[n:], comp


def sg_pseudo(n, comp, f):
    out = set()
    for x in range(n):
        fx = comp.get((f, x))
        xf = comp.get((x, f))
        if fx is not None and comp.get((fx, f)) == f and xf is not None and comp.get((xf, x)) == x:
            out.add(x)
    return out


def sg_regular(n, comp):
    return all(sg_pseudo(n, comp, f) for f in range(n))


def sg_lc(n, comp):
    """fhh* = gh* implies fh = g, and h*hf = h*g implies hf = g; both sides must be defined."""
    def c(*xs):
        acc = xs[-1]
        for x in reversed(xs[:-1]):
            acc = None if acc is None else comp.get((x, acc))
        return acc

    for h in range(n):
        for hs in sg_pseudo(n, comp, h):
            for f in range(n):
                for g in range(n):
                    lhs, rhs = c(f, h, hs), c(g, hs)
                    if lhs is not None and lhs == rhs and comp.get((f, h)) != g:
                        return False
                    lhs, rhs = c(hs, h, f), c(hs, g)
                    if lhs is not None and lhs == rhs and comp.get((h, f)) != g:
                        return False
    return True


def sg_groupoid(n, src, tgt, comp):
    objects = set(src) | set(tgt)
    ident = {}
    for x in objects:
        for e in range(n):
            if src[e] == tgt[e] == x and all(comp.get((f, e)) == f for f in range(n) if src[f] == x) \
                    and all(comp.get((e, f)) == f for f in range(n) if tgt[f] == x):
                ident[x] = e
    if len(ident) != len(objects):
        return False
    return all(any(comp.get((g, f)) == ident[src[f]] and comp.get((f, g)) == ident[tgt[f]] for g in range(n))
               for f in range(n))


def census_structures(n):
    counts = {"semigroupoid": 0, "regular": 0, "lrsgpd": 0, "groupoid": 0, "one-object": 0}
    for src, tgt, comp in all_semigroupoids(n):
        counts["semigroupoid"] += 1
        if len(set(src) | set(tgt)) == 1:
            counts["one-object"] += 1
        if sg_regular(n, comp):
            counts["regular"] += 1
            if sg_lc(n, comp):
                counts["lrsgpd"] += 1
        if sg_groupoid(n, src, tgt, comp):
            counts["groupoid"] += 1
    return counts


# -- morphism conditions, read off the element-level meaning of the equations ---------

def table(m):
    return {p: z for p, z in m}


def rel_R(mX, mY, r):
    """r equals {(xx', yy') | (x,y), (x',y') in r, both products defined}."""
    tx, ty = table(mX), table(mY)
    gen = {(tx[(x, x2)], ty[(y, y2)]) for x, y in r for x2, y2 in r if (x, x2) in tx and (y, y2) in ty}
    return gen == set(r)


def inverse_map(X, m):
    return {x: next(iter(pseudo(X, m, x))) for x in X}


def rel_I(X, mX, Y, mY, r):
    ix, iy = inverse_map(X, mX), inverse_map(Y, mY)
    return all((ix[x], iy[y]) in r for x, y in r)
