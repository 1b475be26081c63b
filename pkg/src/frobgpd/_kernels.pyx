# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contract as ``_kernels_py``."""

cdef enum:
    MAXN = 4
    MAXCELLS = 16

MODE_FROBENIUS = 0
MODE_HSTAR = 1


def decode_table(int n, long long index):
    cdef int k
    out = []
    for k in range(n * n):
        out.append(<int>(index % (n + 1)) - 1)
        index //= (n + 1)
    return out


cdef inline int t3(int* T, int n, int a, int b, int c) nogil:
    cdef int ab = T[a * n + b]
    if ab < 0:
        return -1
    return T[ab * n + c]


cdef bint surjective(int* T, int n) nogil:
    cdef int k, hit = 0
    for k in range(n * n):
        if T[k] >= 0:
            hit |= 1 << T[k]
    return hit == (1 << n) - 1


cdef bint associative(int* T, int n) nogil:
    cdef int f, g, h, fg, gh, left, right
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


cdef bint frobenius(int* T, int n) nogil:
    cdef int a, b, c, d, e, ab
    cdef bint same, via_right, via_left
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


cdef bint has_unit(int* T, int n) nogil:
    cdef int u, f, fu, uf, U = 0
    cdef bint ok, right, left
    for u in range(n):
        ok = True
        for f in range(n):
            fu = T[f * n + u]
            uf = T[u * n + f]
            if (fu >= 0 and fu != f) or (uf >= 0 and uf != f):
                ok = False
                break
        if ok:
            U |= 1 << u
    for f in range(n):
        right = False
        left = False
        for u in range(n):
            if (U >> u) & 1:
                if T[f * n + u] == f:
                    right = True
                if T[u * n + f] == f:
                    left = True
        if not (right and left):
            return False
    return True


cdef bint hstar(int* T, int n) nogil:
    cdef int singles[MAXN]
    cdef int a, x, y, A, B, mask
    cdef bint l1, l2, r1, r2
    for a in range(n):
        mask = 0
        for x in range(n):
            if t3(T, n, a, x, a) == a and t3(T, n, x, a, x) == x:
                mask |= 1 << x
        singles[a] = mask
    for A in range(1 << n):
        B = 0
        for a in range(n):
            if (A >> a) & 1:
                B |= singles[a]
        for x in range(n):
            for y in range(n):
                l1 = False
                l2 = False
                r1 = False
                r2 = False
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


def scan_tables(int n, long long start, long long stop, int mode):
    if n < 1 or n > MAXN:
        raise ValueError("kernel supports 1 <= n <= 4")
    cdef int T[MAXCELLS]
    cdef int k
    cdef long long index, rest
    cdef int base = n + 1
    out = []
    # decode start once, then increment the digit vector like an odometer
    rest = start
    for k in range(n * n):
        T[k] = <int>(rest % base) - 1
        rest //= base
    index = start
    while index < stop:
        if surjective(T, n) and associative(T, n):
            if mode == 0:
                if has_unit(T, n) and frobenius(T, n):
                    out.append(index)
            elif hstar(T, n):
                out.append(index)
        index += 1
        k = 0
        while k < n * n:
            T[k] += 1
            if T[k] < n:
                break
            T[k] = -1
            k += 1
    return out


cdef struct Search:
    int n
    int ncells
    int cells[MAXCELLS]
    int opts[MAXCELLS][MAXN]
    int nopts[MAXCELLS]
    int chains[64][3]
    int nchains
    int T[MAXCELLS]
    bint assigned[MAXCELLS]


cdef bint consistent(Search* s) nogil:
    cdef int k, h, g, f, hg, gf, a, b
    cdef int n = s.n
    for k in range(s.nchains):
        h = s.chains[k][0]
        g = s.chains[k][1]
        f = s.chains[k][2]
        hg = h * n + g
        gf = g * n + f
        if not (s.assigned[hg] and s.assigned[gf]):
            continue
        a = s.T[hg] * n + f
        b = h * n + s.T[gf]
        if s.assigned[a] and s.assigned[b] and s.T[a] != s.T[b]:
            return False
    return True


cdef void fill(Search* s, int k, list out):
    cdef int idx, j
    if k == s.ncells:
        out.append([s.T[j] for j in range(s.n * s.n)])
        return
    idx = s.cells[k]
    s.assigned[idx] = True
    for j in range(s.nopts[k]):
        s.T[idx] = s.opts[k][j]
        if consistent(s):
            fill(s, k + 1, out)
    s.T[idx] = -1
    s.assigned[idx] = False


def semigroupoid_tables(int n, src, tgt):
    if n < 1 or n > MAXN:
        raise ValueError("kernel supports 1 <= n <= 4")
    cdef Search s
    cdef int g, f, h, k, c
    s.n = n
    s.ncells = 0
    s.nchains = 0
    for k in range(n * n):
        s.T[k] = -1
        s.assigned[k] = False
    for g in range(n):
        for f in range(n):
            if src[g] == tgt[f]:
                c = s.ncells
                s.cells[c] = g * n + f
                s.nopts[c] = 0
                for h in range(n):
                    if src[h] == src[f] and tgt[h] == tgt[g]:
                        s.opts[c][s.nopts[c]] = h
                        s.nopts[c] += 1
                if s.nopts[c] == 0:
                    return []
                s.ncells += 1
    for h in range(n):
        for g in range(n):
            for f in range(n):
                if src[h] == tgt[g] and src[g] == tgt[f]:
                    s.chains[s.nchains][0] = h
                    s.chains[s.nchains][1] = g
                    s.chains[s.nchains][2] = f
                    s.nchains += 1
    out = []
    fill(&s, 0, out)
    return out
