# cython: language_level=3
"""Compiled twins of the functions in ``_pykernels``.

Monomial masks fit in 64 bits (n <= 62).  Coefficients stay Python objects
so exact arithmetic is preserved; the speed-up comes from typed bit
manipulation and loop overhead.
"""

from libc.stdint cimport uint64_t, int64_t
from math import gcd

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int _sign(uint64_t a, uint64_t b) nogil:
    cdef int inv = 0
    cdef uint64_t low
    if a & b:
        return 0
    while b:
        low = b & (~b + 1)
        inv += _popc(a & ~((low << 1) - 1))
        b ^= low
    return -1 if inv & 1 else 1


def mask_sign(a, b):
    return _sign(<uint64_t>a, <uint64_t>b)


def deglex_key(mask):
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t x = ~m
    cdef uint64_t rev = 0
    cdef int i
    for i in range(64):
        rev = (rev << 1) | (x & 1)
        x >>= 1
    return ((<object>_popc(m)) << 64) | (<object>rev)


def wedge_terms(dict x, dict y):
    cdef dict out = {}
    cdef uint64_t a, b
    cdef int s
    for ka, ca in x.items():
        a = <uint64_t>ka
        for kb, cb in y.items():
            b = <uint64_t>kb
            if a & b:
                continue
            s = _sign(a, b)
            m = a | b
            c = out.get(m, 0)
            if s > 0:
                c = c + ca * cb
            else:
                c = c - ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def boundary_terms(dict x):
    cdef dict out = {}
    cdef uint64_t m, rest, low
    cdef int k
    for km, c in x.items():
        m = <uint64_t>km
        rest = m
        k = 0
        while rest:
            low = rest & (~rest + 1)
            t = m ^ low
            if k % 2 == 0:
                v = out.get(t, 0) + c
            else:
                v = out.get(t, 0) - c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
            rest ^= low
            k += 1
    return out


cdef dict _combine(object a, dict x, object b, dict y):
    cdef dict out
    if a == 1:
        out = dict(x)
    else:
        out = {k: a * v for k, v in x.items()}
    for k, v in y.items():
        c = out.get(k, 0) + b * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


cdef tuple _primitive(dict v, object tv):
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            return v, tv
    if tv is not None:
        for c in (<dict>tv).values():
            g = gcd(g, c)
            if g == 1:
                return v, tv
    if g > 1:
        v = {k: c // g for k, c in v.items()}
        if tv is not None:
            tv = {k: c // g for k, c in (<dict>tv).items()}
    return v, tv


def reduce_row(dict v, tv, dict rows, tags):
    cdef list hits = [m for m in v if m in rows]
    cdef dict row
    for p in hits:
        vp = v[p]
        row = <dict>rows[p]
        rp = row[p]
        g = gcd(rp, vp)
        a = rp // g
        b = -(vp // g)
        v = _combine(a, v, b, row)
        if tv is not None:
            tv = _combine(a, <dict>tv, b, <dict>tags[p])
    return _primitive(v, tv)


def insert_row(dict rows, tags, dict v, tv, pivot):
    cdef dict row, new
    if v[pivot] < 0:
        v = {k: -c for k, c in v.items()}
        if tv is not None:
            tv = {k: -c for k, c in (<dict>tv).items()}
    vp = v[pivot]
    for p in list(rows):
        row = <dict>rows[p]
        rq = row.get(pivot)
        if not rq:
            continue
        g = gcd(vp, rq)
        a = vp // g
        b = -(rq // g)
        new = _combine(a, row, b, v)
        newt = _combine(a, <dict>tags[p], b, <dict>tv) if tv is not None else None
        new, newt = _primitive(new, newt)
        rows[p] = new
        if tv is not None:
            tags[p] = newt
    rows[pivot] = v
    if tv is not None:
        tags[pivot] = tv


cdef inline bint _meets_twice(uint64_t c, uint64_t* blocks, int k):
    cdef int hit = 0
    cdef int j
    for j in range(k):
        if c & blocks[j]:
            hit += 1
    return hit < _popc(c)


def search_partitions(int n, small, full, bint stop_first):
    cdef int ns = len(small)
    cdef int nf = len(full)
    cdef uint64_t sm[4096]
    cdef uint64_t fm[4096]
    cdef uint64_t blocks[64]
    cdef int rgs[64]
    cdef int pmax[64]
    cdef int i, j, k, ok
    cdef int64_t total = 0, n_pind = 0, n_bad = 0
    if n == 0:
        return 1, 1, 0, None
    if n > 62 or ns > 4096 or nf > 4096:
        raise ValueError("problem too large for the compiled kernel")
    for i in range(ns):
        sm[i] = <uint64_t>small[i]
    for i in range(nf):
        fm[i] = <uint64_t>full[i]
    for i in range(n):
        rgs[i] = 0
    witness = None
    while True:
        for j in range(n):
            blocks[j] = 0
        k = 0
        for i in range(n):
            blocks[rgs[i]] |= (<uint64_t>1) << i
            if rgs[i] + 1 > k:
                k = rgs[i] + 1
        total += 1
        ok = 1
        for j in range(ns):
            if not _meets_twice(sm[j], blocks, k):
                ok = 0
                break
        if ok:
            n_pind += 1
            for j in range(nf):
                if not _meets_twice(fm[j], blocks, k):
                    ok = 0
                    break
            if not ok:
                n_bad += 1
                if witness is None:
                    witness = [rgs[i] for i in range(n)]
                    if stop_first:
                        return total, n_pind, n_bad, witness
        # prefix maxima, then the next restricted growth string
        pmax[0] = rgs[0]
        for i in range(1, n):
            pmax[i] = pmax[i - 1] if pmax[i - 1] > rgs[i] else rgs[i]
        i = n - 1
        while i > 0:
            if rgs[i] <= pmax[i - 1]:
                break
            i -= 1
        if i == 0:
            return total, n_pind, n_bad, witness
        rgs[i] += 1
        for j in range(i + 1, n):
            rgs[j] = 0


cdef int _find(int* parent, int a) nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def max_components(int n, choices, int stop_at):
    cdef int m = len(choices)
    cdef int idx[256]
    cdef int sizes[256]
    cdef int eu[256][64]
    cdef int ev[256][64]
    cdef int parent[64]
    cdef int i, j, comps, ru, rv, best = -1
    cdef int64_t visited = 0
    if m > 256 or n > 64:
        raise ValueError("problem too large for the compiled kernel")
    for i in range(m):
        if len(choices[i]) > 64:
            raise ValueError("line too long for the compiled kernel")
        sizes[i] = len(choices[i])
        for j in range(sizes[i]):
            eu[i][j] = choices[i][j][0]
            ev[i][j] = choices[i][j][1]
        idx[i] = 0
    best_idx = None
    while True:
        visited += 1
        for i in range(n):
            parent[i] = i
        comps = n
        for i in range(m):
            ru = _find(parent, eu[i][idx[i]])
            rv = _find(parent, ev[i][idx[i]])
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        if comps > best:
            best = comps
            best_idx = [idx[i] for i in range(m)]
            if 0 < stop_at <= best:
                return best, best_idx, visited
        j = m - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < sizes[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return best, best_idx, visited
