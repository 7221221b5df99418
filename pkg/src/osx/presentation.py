"""Relations among the generators z(T) of the annihilator.

Vertices of the tree Gamma(S) are ordered bases ``S(a, k)``: the sorted
(l-1)-set S with ``a`` inserted at 1-based position k.  Flags are built from
suffixes, so the flags of ``S(a, k)`` and ``S(b, k+1)`` can only differ in
rank ``l - k``.

With the sign convention of :mod:`osx.zelements` the merge identity reads
``(e_s - e_t) z(pi) = (-1)^(i-1) z(pi~)``; two close flags differing in rank
r merge into the same partition at the same position, so the relation
attached to a pair of close flags is

    (e_a - e_b) z(F) - (e_a' - e_b') z(F') = 0

with no extra sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .exterior import ExtElement, indices_of, mask_of
from .linalg import kernel, rank_of_vectors
from .matroid import Flag, Matroid, MatroidError
from .reports import Report
from .zelements import z_of_flag, z_of_nbc


def _gen(i: int) -> ExtElement:
    return ExtElement.generator(i)


# -- nbc' and neatness ---------------------------------------------------------


@dataclass(frozen=True)
class NbcPrime:
    S: tuple
    N: tuple
    i: int


def neighbours(m: Matroid, s: Iterable[int]) -> tuple:
    """``N(S)``: the points i outside S with ``S + i`` an nbc-base."""
    s = set(s)
    return tuple(i for i in range(1, m.n + 1) if i not in s and m.is_nbc(sorted(s | {i})))


def nbc_prime(m: Matroid) -> list[NbcPrime]:
    """(l-1)-element nbc-sets lying in at least two nbc-bases."""
    out = []
    if m.rank < 1:
        return out
    for s in m.nbc_sets(m.rank - 1):
        nb = neighbours(m, s)
        if len(nb) >= 2:
            out.append(NbcPrime(s, nb, nb[0]))
    return out


def is_neat(m: Matroid, u) -> bool:
    u = tuple(u)
    if len(u) != m.rank or not m.is_independent(u):
        raise MatroidError(f"{u} is not an ordered base")
    return m.phi(m.flagify(u)) == u


def insert(s: tuple, a: int, k: int) -> tuple:
    """``S(a, k)``: a placed at 1-based position k of the sorted tuple S."""
    return s[: k - 1] + (a,) + s[k - 1:]


def is_early(s: tuple, a: int, k: int) -> bool:
    return k == 1 or a > s[k - 2]


# -- the tree Gamma(S) ---------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    a: int
    k: int
    base: tuple

    def label(self) -> str:
        return ",".join(map(str, self.base))


@dataclass
class GammaTree:
    S: tuple
    N: tuple
    vertices: list
    edges: list            # (parent, child) with child.k == parent.k + 1
    root: Vertex

    def children(self, v: Vertex) -> list[Vertex]:
        return [c for p, c in self.edges if p == v]

    def parent(self, v: Vertex) -> Vertex | None:
        for p, c in self.edges:
            if c == v:
                return p
        return None

    def leaves(self) -> list[Vertex]:
        return [v for v in self.vertices if not self.children(v)]

    def descendants(self, v: Vertex) -> list[Vertex]:
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children(x))
        return out

    def find(self, a: int, k: int) -> Vertex:
        for v in self.vertices:
            if (v.a, v.k) == (a, k):
                return v
        raise KeyError(f"S({a},{k}) is not a vertex of Gamma({self.S})")

    def to_json(self) -> dict:
        def node(v):
            return {"base": list(v.base), "a": v.a, "k": v.k,
                    "children": [node(c) for c in sorted(self.children(v), key=lambda c: c.base)]}

        return {"S": list(self.S), "N": list(self.N), "root": node(self.root)}

    def to_dot(self) -> str:
        name = "gamma_" + "_".join(map(str, self.S))
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices, key=lambda v: (v.k, v.base)):
            lines.append(f'  "{v.label()}" [label="{v.label()}"];')
        for p, c in sorted(self.edges, key=lambda e: (e[0].k, e[0].base, e[1].base)):
            lines.append(f'  "{p.label()}" -> "{c.label()}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _x_upper(m: Matroid, s: tuple, k: int) -> int:
    # X^k = cl{s_k, ..., s_(l-1)} as a mask
    return m.closure_mask(mask_of(s[k - 1:]))


def _nbc_prime_entry(m: Matroid, s) -> NbcPrime:
    s = tuple(sorted(s))
    nb = neighbours(m, s)
    if len(s) != m.rank - 1 or not m.is_nbc(s) or len(nb) < 2:
        raise MatroidError(f"{s} is not in nbc'")
    return NbcPrime(s, nb, nb[0])


def gamma_tree(m: Matroid, s: Iterable[int]) -> GammaTree:
    """Build Gamma(S) and check that it is a tree with the expected root and leaves."""
    entry = _nbc_prime_entry(m, s)
    s, nb, l = entry.S, entry.N, m.rank
    verts = []
    for k in range(1, l + 1):
        for a in nb:
            if is_early(s, a, k):
                u = insert(s, a, k)
                if is_neat(m, u):
                    verts.append(Vertex(a, k, u))
    edges = []
    for k in range(1, l):
        xk = _x_upper(m, s, k)
        for v in verts:
            if v.k != k:
                continue
            join = m.closure_mask(xk | mask_of([v.a]))
            for w in verts:
                if w.k == k + 1 and m.closure_mask(xk | mask_of([w.a])) == join:
                    edges.append((v, w))
    root = next((v for v in verts if v.k == 1 and v.a == entry.i), None)
    tree = GammaTree(s, nb, verts, edges, root)
    _validate_gamma(m, tree)
    return tree


def _validate_gamma(m: Matroid, t: GammaTree):
    if t.root is None:
        raise AssertionError(f"Gamma({t.S}): S(i(S),1) is not a vertex")
    if len(t.edges) != len(t.vertices) - 1:
        raise AssertionError(f"Gamma({t.S}): {len(t.vertices)} vertices but {len(t.edges)} edges")
    seen = set(t.descendants(t.root))
    if seen != set(t.vertices):
        raise AssertionError(f"Gamma({t.S}) is not connected")
    standard = {Vertex(b, sorted(t.S + (b,)).index(b) + 1, tuple(sorted(t.S + (b,)))) for b in t.N}
    if set(t.leaves()) != standard:
        raise AssertionError(f"Gamma({t.S}): leaves are not the standard orderings")
    for p, c in t.edges:
        f, g = m.flagify(p.base), m.flagify(c.base)
        diff = [i for i in range(m.rank + 1) if f[i] != g[i]]
        if len(diff) > 1:
            raise AssertionError(f"Gamma({t.S}): flags of {p.base} and {c.base} are not close")


# -- the small tree t(S) -------------------------------------------------------


@dataclass
class SmallTree:
    S: tuple
    N: tuple
    edges: list            # sorted pairs (a, b) with a < b

    def to_json(self):
        return {"S": list(self.S), "N": list(self.N), "edges": [list(e) for e in self.edges]}


def t_tree_from_gamma(g: GammaTree) -> SmallTree:
    edges = sorted({(p.a, c.a) for p, c in g.edges if p.a != c.a})
    return SmallTree(g.S, g.N, edges)


def t_tree_algorithm(m: Matroid, s: Iterable[int]) -> SmallTree:
    """Shift each non-minimal b left while neat; the first failure names its parent."""
    entry = _nbc_prime_entry(m, s)
    s, nb = entry.S, entry.N
    edges = []
    for b in nb[1:]:
        r = sorted(s + (b,)).index(b) + 1
        k = r - 1
        while k >= 1 and is_neat(m, insert(s, b, k)):
            k -= 1
        if k < 1:
            raise AssertionError(f"S({b},1) is neat although {b} is not minimal in N(S)")
        u = m.phi(m.flagify(insert(s, b, k)))
        a = u[k - 1]
        if insert(s, a, k) != u or a not in nb or a >= b:
            raise AssertionError(f"phi(flagify(S({b},{k}))) = {u} is not S(a,{k}) with a < {b}")
        edges.append((a, b))
    return SmallTree(s, nb, sorted(edges))


def t_tree(m: Matroid, s: Iterable[int]) -> SmallTree:
    """t(S), computed both ways; the two constructions must agree."""
    g = gamma_tree(m, s)
    a = t_tree_from_gamma(g)
    b = t_tree_algorithm(m, s)
    if a.edges != b.edges:
        raise AssertionError(f"t({g.S}): Gamma projection {a.edges} != algorithm {b.edges}")
    if len(a.edges) != len(a.N) - 1:
        raise AssertionError(f"t({g.S}) is not a tree")
    return a


# -- relations -----------------------------------------------------------------


@dataclass
class Relation:
    """``sum_i coeff_i * z(F_i) = 0`` with linear-form coefficients.

    ``terms`` holds ``(coefficient, flag)`` pairs as constructed; ``standard``
    is the same relation rewritten over the standard generators, keyed by
    nbc-base.
    """

    kind: str
    provenance: tuple
    terms: list
    standard: dict = field(default_factory=dict)

    def evaluate(self, m: Matroid) -> ExtElement:
        out = ExtElement()
        for c, f in self.terms:
            out = out + c * z_of_flag(m, f).value
        return out

    def evaluate_standard(self, m: Matroid) -> ExtElement:
        out = ExtElement()
        for t, c in self.standard.items():
            out = out + c * z_of_nbc(m, t).value
        return out

    def to_json(self):
        from .exterior import render

        return {"kind": self.kind, "provenance": [list(x) if isinstance(x, tuple) else x for x in self.provenance],
                "standard": {",".join(map(str, t)): render(c) for t, c in sorted(self.standard.items())}}


def close_pair_forms(f: Flag, g: Flag) -> tuple:
    """``(a, b, a', b')`` for close maximal flags differing in one rank."""
    diff = [i for i in range(len(f.flats)) if f[i] != g[i]]
    if len(diff) != 1:
        raise ValueError("flags are not close and distinct")
    r = diff[0]

    def mins(h):
        return min(h[r] - h[r - 1]), min(h[r + 1] - h[r])

    return (*mins(f), *mins(g))


def close_relation(m: Matroid, f: Flag, g: Flag, provenance=()) -> Relation:
    a, b, a2, b2 = close_pair_forms(f, g)
    return Relation("first", provenance, [(_gen(a) - _gen(b), f), (-(_gen(a2) - _gen(b2)), g)])


def expand_to_standard(m: Matroid, s, a: int, k: int, tree: GammaTree | None = None) -> dict:
    """``z(S(a,k))`` as a signed sum of standard ``z(T)`` over its descendants.

    Each standard descendant ``S(b, j)`` contributes ``(-1)^(j-k) z(S + b)``.
    The identity is checked against the direct computation.
    """
    tree = tree or gamma_tree(m, s)
    v = tree.find(a, k)
    out = {}
    for d in tree.descendants(v):
        if not tree.children(d):
            t = tuple(sorted(d.base))
            out[t] = out.get(t, 0) + (-1) ** (d.k - k)
    direct = z_of_flag(m, m.flagify(v.base)).value
    total = ExtElement()
    for t, c in out.items():
        total = total + z_of_nbc(m, t).value * c
    if total != direct:
        raise AssertionError(f"change of basis fails at S({a},{k}) of Gamma({tree.S})")
    return out


def relations_first_kind(m: Matroid) -> list[Relation]:
    out = []
    for entry in nbc_prime(m):
        g = gamma_tree(m, entry.S)
        t_tree(m, entry.S)
        for a, b in t_tree_from_gamma(g).edges:
            p, c = next((p, c) for p, c in g.edges if p.a == a and c.a == b)
            f, f2 = m.flagify(p.base), m.flagify(c.base)
            # F from the deeper vertex, as in the worked example
            rel = close_relation(m, f2, f, provenance=(entry.S, (a, b), p.k))
            std: dict = {}
            for coef, vert in ((rel.terms[0][0], c), (rel.terms[1][0], p)):
                for tt, sgn in expand_to_standard(m, entry.S, vert.a, vert.k, g).items():
                    std[tt] = std.get(tt, ExtElement()) + coef * sgn
            rel.standard = {tt: v for tt, v in std.items() if v}
            out.append(rel)
    return out


def relations_second_kind(m: Matroid) -> list[Relation]:
    out = []
    for t in m.nbc_sets(m.rank):
        f = m.flagify(t)
        for part in f.parts():
            v = min(part)
            for j in sorted(part):
                if j != v:
                    c = _gen(j) - _gen(v)
                    out.append(Relation("second", (t, j), [(c, f)], {t: c}))
    return out


def flag_relation_check(m: Matroid, f: Flag, i: int) -> ExtElement:
    """Sum of z over all flags agreeing with F except in rank i; should vanish."""
    if not 0 < i < m.rank:
        raise ValueError(f"rank index must lie strictly between 0 and {m.rank}")
    m.check_flag(f)
    total = ExtElement()
    for y in m.flats_between(f[i - 1], f[i + 1]):
        total = total + z_of_flag(m, f.replace(i, y)).value
    return total


# -- relation space ------------------------------------------------------------


def _relation_vector(rel: Relation, index: dict, n: int) -> dict:
    vec = {}
    for t, c in rel.standard.items():
        base = index[t] * (n + 1)
        for mk, coef in c.raw.items():
            if mk.bit_count() != 1:
                raise ValueError("relation coefficients must be linear forms")
            vec[base + mk.bit_length()] = coef
    return vec


def verify_relation_basis(m: Matroid) -> Report:
    """Kernel of ``(a_T) -> sum a_T z(T)`` versus the first- and second-kind relations."""
    rep = Report("relation basis")
    n = m.n
    bases = m.nbc_sets(m.rank)
    index = {t: j for j, t in enumerate(bases)}
    images = []
    keys = []
    for t in bases:
        z = z_of_nbc(m, t).value
        for i in range(1, n + 1):
            keys.append(index[t] * (n + 1) + i)
            images.append(_gen(i) * z)
    ker = kernel(images)
    first = relations_first_kind(m)
    second = relations_second_kind(m)
    rels = first + second
    vecs = [_relation_vector(r, index, n) for r in rels]
    vanish = all(not r.evaluate(m) and not r.evaluate_standard(m) for r in rels)
    rank = rank_of_vectors(vecs)
    expected_first = sum(len(e.N) - 1 for e in nbc_prime(m))
    rep.data.update({"kernel_dim": len(ker), "first_kind": len(first), "second_kind": len(second),
                     "rank_of_relations": rank, "expected_first_kind": expected_first,
                     "expected_second_kind": (n - m.rank) * len(bases)})
    rep.check("relations vanish", vanish)
    rep.check("first-kind count", len(first) == expected_first)
    rep.check("second-kind count", len(second) == (n - m.rank) * len(bases))
    rep.check("independent", rank == len(rels))
    rep.check("span kernel", rank == len(ker))
    return rep


# -- the monomial (initial ideal) version --------------------------------------


def _eps(t_mask: int, i: int) -> int:
    return (t_mask & ((1 << (i - 1)) - 1)).bit_count()


def relations_first_kind_monomial(m: Matroid) -> Report:
    """Relations among the monomial generators ``e_(complement T)`` of In(I^0).

    First kind, for S in nbc' and i in N(S) other than i(S):
    ``(-1)^eps(Sbar, i) e_i g(S+i) - (-1)^eps(Sbar, i(S)) e_i(S) g(S+i(S)) = 0``
    with ``eps(A, i) = #{j in A : j < i}``.  Second kind: ``e_j g(T) = 0`` for
    j outside T.  Both lists are checked to vanish and to span the kernel.
    """
    rep = Report("monomial relations")
    n = m.n
    full = (1 << n) - 1
    bases = m.nbc_sets(m.rank)
    index = {t: j for j, t in enumerate(bases)}
    gens = {t: ExtElement._raw({full & ~mask_of(t): 1}) for t in bases}
    vecs, ok = [], True
    for entry in nbc_prime(m):
        sbar = full & ~mask_of(entry.S)
        t0 = tuple(sorted(entry.S + (entry.i,)))
        s0 = -1 if _eps(sbar, entry.i) % 2 else 1
        for i in entry.N[1:]:
            t = tuple(sorted(entry.S + (i,)))
            si = -1 if _eps(sbar, i) % 2 else 1
            val = _gen(i) * gens[t] * si - _gen(entry.i) * gens[t0] * s0
            ok = ok and not val
            vecs.append({index[t] * (n + 1) + i: si, index[t0] * (n + 1) + entry.i: -s0})
    n_first = len(vecs)
    for t in bases:
        for j in range(1, n + 1):
            if j not in t:
                ok = ok and not (_gen(j) * gens[t])
                vecs.append({index[t] * (n + 1) + j: 1})
    images = [_gen(i) * gens[t] for t in bases for i in range(1, n + 1)]
    ker = kernel(images)
    rank = rank_of_vectors(vecs)
    rep.data.update({"first_kind": n_first, "second_kind": len(vecs) - n_first, "kernel_dim": len(ker)})
    rep.check("relations vanish", ok)
    rep.check("independent", rank == len(vecs))
    rep.check("span kernel", rank == len(ker))
    return rep


def trees_json(m: Matroid) -> list:
    out = []
    for entry in nbc_prime(m):
        g = gamma_tree(m, entry.S)
        out.append({"gamma": g.to_json(), "t": t_tree(m, entry.S).to_json()})
    return out


def trees_dot(m: Matroid) -> str:
    return "".join(gamma_tree(m, e.S).to_dot() for e in nbc_prime(m))
