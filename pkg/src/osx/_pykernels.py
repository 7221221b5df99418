"""Pure-Python implementations of the inner loops.

Monomials are bitmasks: bit ``i - 1`` stands for the generator ``e_i``.
Sparse vectors are plain dicts ``{key: coefficient}`` with no zero values.
Every function here has a twin of the same name in ``_ckernels.pyx``.
"""

from math import gcd

_WIDTH = 64
_FULL = (1 << _WIDTH) - 1


def mask_sign(a, b):
    """Sign of ``e_a * e_b`` relative to ``e_(a|b)``; 0 when the masks overlap."""
    if a & b:
        return 0
    inv = 0
    while b:
        low = b & -b
        inv += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inv & 1 else 1


def deglex_key(mask):
    """Integer sort key: larger key means larger monomial in deg-lex order.

    Within one degree ``A > B`` iff the smallest index of the symmetric
    difference lies in ``B``; reversing the complemented bits turns that into
    ordinary integer comparison.
    """
    x = ~mask & _FULL
    rev = int(format(x, "064b")[::-1], 2)
    return (mask.bit_count() << _WIDTH) | rev


def wedge_terms(x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            if a & b:
                continue
            s = mask_sign(a, b)
            m = a | b
            c = out.get(m, 0) + (ca * cb if s > 0 else -(ca * cb))
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def boundary_terms(x):
    out = {}
    for m, c in x.items():
        rest = m
        k = 0
        while rest:
            low = rest & -rest
            t = m ^ low
            v = out.get(t, 0) + (c if k % 2 == 0 else -c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
            rest ^= low
            k += 1
    return out


def _combine(a, x, b, y):
    # a*x + b*y for sparse integer vectors
    out = {k: a * v for k, v in x.items()} if a != 1 else dict(x)
    for k, v in y.items():
        c = out.get(k, 0) + b * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def _primitive(v, tv):
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            return v, tv
    if tv is not None:
        for c in tv.values():
            g = gcd(g, c)
            if g == 1:
                return v, tv
    if g > 1:
        v = {k: c // g for k, c in v.items()}
        if tv is not None:
            tv = {k: c // g for k, c in tv.items()}
    return v, tv


def reduce_row(v, tv, rows, tags):
    """Reduce ``v`` against fully reduced integer rows keyed by pivot.

    ``tv`` tracks the combination of inputs that produced ``v`` (or is None).
    Returns the primitive residual pair.
    """
    hits = [m for m in v if m in rows]
    for p in hits:
        vp = v[p]
        row = rows[p]
        rp = row[p]
        g = gcd(rp, vp)
        a, b = rp // g, -(vp // g)
        v = _combine(a, v, b, row)
        if tv is not None:
            tv = _combine(a, tv, b, tags[p])
    return _primitive(v, tv)


def insert_row(rows, tags, v, tv, pivot):
    """Add a reduced row with the given pivot and clear that column elsewhere."""
    if v[pivot] < 0:
        v = {k: -c for k, c in v.items()}
        if tv is not None:
            tv = {k: -c for k, c in tv.items()}
    vp = v[pivot]
    for p, row in rows.items():
        rq = row.get(pivot)
        if not rq:
            continue
        g = gcd(vp, rq)
        a, b = vp // g, -(rq // g)
        new = _combine(a, row, b, v)
        newt = _combine(a, tags[p], b, tv) if tv is not None else None
        new, newt = _primitive(new, newt)
        rows[p] = new
        if tv is not None:
            tags[p] = newt
    rows[pivot] = v
    if tv is not None:
        tags[pivot] = tv


def _meets_twice(c, blocks, k):
    hit = 0
    for j in range(k):
        if c & blocks[j]:
            hit += 1
    return hit < c.bit_count()


def search_partitions(n, small, full, stop_first):
    """Enumerate set partitions of ``n`` points by restricted growth strings.

    A partition is counted as p-independent when every mask in ``small``
    meets some block twice, and as independent when every mask in ``full``
    does.  Returns ``(total, n_pindep, n_bad, witness)`` where ``witness`` is
    the first restricted growth string that is p-independent but not
    independent.
    """
    total = n_pind = n_bad = 0
    witness = None
    if n == 0:
        return 1, 1, 0, None
    rgs = [0] * n
    blocks = [0] * n
    while True:
        for j in range(n):
            blocks[j] = 0
        k = 0
        for i in range(n):
            blocks[rgs[i]] |= 1 << i
            if rgs[i] + 1 > k:
                k = rgs[i] + 1
        total += 1
        if all(_meets_twice(c, blocks, k) for c in small):
            n_pind += 1
            if not all(_meets_twice(c, blocks, k) for c in full):
                n_bad += 1
                if witness is None:
                    witness = list(rgs)
                    if stop_first:
                        return total, n_pind, n_bad, witness
        # next restricted growth string
        i = n - 1
        while i > 0:
            if rgs[i] <= max(rgs[:i]):
                break
            i -= 1
        if i == 0:
            return total, n_pind, n_bad, witness
        rgs[i] += 1
        for j in range(i + 1, n):
            rgs[j] = 0


def _components(n, edges):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def max_components(n, choices, stop_at):
    """Maximise the component count over one-edge-per-line graphs.

    ``choices[i]`` lists the candidate 0-indexed edges of line ``i``.  Stops
    early once ``stop_at`` components are reached (``stop_at <= 0`` never
    stops).  Returns ``(best, best_assignment, n_visited)``.
    """
    m = len(choices)
    idx = [0] * m
    best = -1
    best_idx = None
    visited = 0
    while True:
        visited += 1
        comps = _components(n, [choices[i][idx[i]] for i in range(m)])
        if comps > best:
            best = comps
            best_idx = list(idx)
            if 0 < stop_at <= best:
                return best, best_idx, visited
        j = m - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(choices[j]):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return best, best_idx, visited
