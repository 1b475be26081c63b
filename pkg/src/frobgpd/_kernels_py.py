"""Pure-Python enumeration kernels (reference implementation and fallback).

Tables are flat lists ``T[i * n + j]`` holding the index of the product
``ij`` or ``-1`` when undefined.
"""

from __future__ import annotations

MODE_FROBENIUS = 0
MODE_HSTAR = 1


def decode_table(n: int, index: int) -> list[int]:
    """Candidate ``index`` in base ``n + 1``; digit ``d`` encodes product ``d - 1``."""
    cells = []
    for _ in range(n * n):
        index, d = divmod(index, n + 1)
        cells.append(d - 1)
    return cells


def _surjective(T, n) -> bool:
    hit = 0
    for v in T:
        if v >= 0:
            hit |= 1 << v
    return hit == (1 << n) - 1


def _associative(T, n) -> bool:
    for f in range(n):
        for g in range(n):
            fg = T[f * n + g]
            for h in range(n):
                gh = T[g * n + h]
                left = -1 if fg < 0 else T[fg * n + h]
                right = -1 if gh < 0 else T[f * n + gh]
                if left != right:
                    return False
    return True


def _frobenius(T, n) -> bool:
    for a in range(n):
        for b in range(n):
            ab = T[a * n + b]
            for c in range(n):
                for d in range(n):
                    same = ab >= 0 and ab == T[c * n + d]
                    via_right = False
                    via_left = False
                    for e in range(n):
                        if T[e * n + d] == b and T[a * n + e] == c:
                            via_right = True
                        if T[e * n + b] == d and T[c * n + e] == a:
                            via_left = True
                    if same != via_right or same != via_left:
                        return False
    return True


def _has_unit(T, n) -> bool:
    U = 0
    for u in range(n):
        ok = True
        for f in range(n):
            fu, uf = T[f * n + u], T[u * n + f]
            if (fu >= 0 and fu != f) or (uf >= 0 and uf != f):
                ok = False
                break
        if ok:
            U |= 1 << u
    for f in range(n):
        right = left = False
        for u in range(n):
            if (U >> u) & 1:
                if T[f * n + u] == f:
                    right = True
                if T[u * n + f] == f:
                    left = True
        if not (right and left):
            return False
    return True


def _t3(T, n, a, b, c) -> int:
    ab = T[a * n + b]
    return -1 if ab < 0 else T[ab * n + c]


def _hstar(T, n) -> bool:
    singles = []
    for a in range(n):
        mask = 0
        for x in range(n):
            if _t3(T, n, a, x, a) == a and _t3(T, n, x, a, x) == x:
                mask |= 1 << x
        singles.append(mask)
    for A in range(1 << n):
        B = 0
        for a in range(n):
            if (A >> a) & 1:
                B |= singles[a]
        for x in range(n):
            for y in range(n):
                l1 = l2 = r1 = r2 = False
                for a in range(n):
                    if (A >> a) & 1:
                        if T[x * n + a] == y:
                            l1 = True
                        if T[a * n + x] == y:
                            l2 = True
                    if (B >> a) & 1:
                        if T[y * n + a] == x:
                            r1 = True
                        if T[a * n + y] == x:
                            r2 = True
                if l1 != r1 or l2 != r2:
                    return False
    return True


def scan_tables(n: int, start: int, stop: int, mode: int) -> list[int]:
    """Indices in ``[start, stop)`` whose table passes the axioms of ``mode``."""
    out = []
    for index in range(start, stop):
        T = decode_table(n, index)
        if not _surjective(T, n) or not _associative(T, n):
            continue
        if mode == MODE_FROBENIUS:
            if _has_unit(T, n) and _frobenius(T, n):
                out.append(index)
        elif _hstar(T, n):
            out.append(index)
    return out


def semigroupoid_tables(n: int, src: list[int], tgt: list[int]) -> list[list[int]]:
    """All associative composition tables for fixed source and target maps."""
    cells = [(g, f) for g in range(n) for f in range(n) if src[g] == tgt[f]]
    options = [[h for h in range(n) if src[h] == src[f] and tgt[h] == tgt[g]] for g, f in cells]
    if any(not opt for opt in options):
        return []
    T = [-1] * (n * n)
    chains = [(h, g, f) for h in range(n) for g in range(n) for f in range(n)
              if src[h] == tgt[g] and src[g] == tgt[f]]
    out: list[list[int]] = []
    assigned = [False] * (n * n)

    def consistent() -> bool:
        for h, g, f in chains:
            hg, gf = h * n + g, g * n + f
            if not (assigned[hg] and assigned[gf]):
                continue
            a, b = T[hg] * n + f, h * n + T[gf]
            if assigned[a] and assigned[b] and T[a] != T[b]:
                return False
        return True

    def fill(k: int) -> None:
        if k == len(cells):
            out.append(list(T))
            return
        g, f = cells[k]
        idx = g * n + f
        assigned[idx] = True
        for h in options[k]:
            T[idx] = h
            if consistent():
                fill(k + 1)
        T[idx] = -1
        assigned[idx] = False

    fill(0)
    return out
