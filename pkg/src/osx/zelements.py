"""The annihilator generators z(pi), z(F), z(T) and checks of their properties.

Sign convention.  For an ordered partition ``A_1, ..., A_k`` of a set X with
minima ``v_i = min A_i``, and ``R`` the rest of the ground set,

    z = sgn(v_k, ..., v_1, A_1 - v_1, ..., A_k - v_k, R) * d(e_A1) ... d(e_Ak) * e_R

where ``sgn`` is the sign of the listed sequence as a permutation of [n].
This is the unique choice with ``e_(v_k) ... e_(v_1) * z = e_[n]``; for an
nbc-set T with its standard flag it gives ``e_T * z(T) = e_[n]``.  The plain
block-shuffle sign is kept as ``convention="shuffle"`` for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .exterior import ExtElement, all_monomial_masks, boundary_of_set, indices_of, mask_of
from .ideal import annihilator_component, os_generators
from .linalg import MonomialBasisSpace
from .matroid import Flag, Matroid, MatroidError
from .reports import Report


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of a sequence of distinct integers relative to its sorted order."""
    s = 1
    seen = list(seq)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                s = -s
    return s


@dataclass(frozen=True)
class ZElement:
    """A z-element together with the data that produced it."""

    parts: tuple          # ordered parts, each a sorted tuple
    rest: tuple           # points outside the parts, sorted
    sequence: tuple       # the permutation whose sign was applied
    sign: int
    value: ExtElement

    @property
    def degree(self) -> int:
        return sum(len(p) - 1 for p in self.parts) + len(self.rest)


def _normalize_parts(parts: Iterable[Iterable[int]]) -> tuple:
    out = tuple(tuple(sorted(p)) for p in parts)
    if any(not p for p in out):
        raise ValueError("partition parts must be nonempty")
    flat = [x for p in out for x in p]
    if len(set(flat)) != len(flat):
        raise ValueError("partition parts must be disjoint")
    return out


def _z(parts: tuple, n: int, convention: str = "normalized") -> ZElement:
    covered = {x for p in parts for x in p}
    if any(not 1 <= x <= n for x in covered):
        raise ValueError(f"partition has points outside 1..{n}")
    rest = tuple(x for x in range(1, n + 1) if x not in covered)
    if convention == "normalized":
        seq = tuple(p[0] for p in reversed(parts)) + tuple(x for p in parts for x in p[1:]) + rest
    elif convention == "shuffle":
        seq = tuple(x for p in parts for x in p) + rest
    else:
        raise ValueError(f"unknown sign convention {convention!r}")
    sign = perm_sign(seq)
    val = ExtElement.scalar(sign)
    for p in parts:
        val = val * boundary_of_set(p)
    val = val * ExtElement.monomial(rest)
    return ZElement(parts, rest, seq, sign, val)


def z_of_partition(parts: Iterable[Iterable[int]], n: int | None = None, convention: str = "normalized") -> ZElement:
    """z of an ordered partition of [n]; lies in degree ``n - |parts|``."""
    parts = _normalize_parts(parts)
    total = sum(len(p) for p in parts)
    n = total if n is None else n
    if {x for p in parts for x in p} != set(range(1, n + 1)):
        raise ValueError(f"parts do not form a partition of 1..{n}")
    return _z(parts, n, convention)


def z_of_partial(parts: Iterable[Iterable[int]], n: int, convention: str = "normalized") -> ZElement:
    """z of an ordered partition of a subset X, times ``e`` of the complement."""
    return _z(_normalize_parts(parts), n, convention)


def z_of_flag(m: Matroid, f: Flag, *, maximal: bool = True) -> ZElement:
    m.check_flag(f, maximal=maximal)
    return _z(tuple(tuple(sorted(p)) for p in f.parts()), m.n)


def z_of_ordered_base(m: Matroid, u: Sequence[int]) -> ZElement:
    """z of the flag ``flagify(u)``."""
    return z_of_flag(m, m.flagify(u), maximal=len(u) == m.rank)


def z_of_nbc(m: Matroid, t: Iterable[int]) -> ZElement:
    t = sorted(t)
    if not m.is_nbc(t):
        raise MatroidError(f"{tuple(t)} is not an nbc-set")
    return z_of_flag(m, m.flagify(t), maximal=False)


def z_basis(m: Matroid, p: int) -> list[ExtElement]:
    return [z_of_nbc(m, t).value for t in m.nbc_sets(p)]


# -- identities ----------------------------------------------------------------


@dataclass
class MergeCheck:
    lhs: ExtElement
    rhs: ExtElement
    sign: int
    holds: bool


def merge_multiply(parts: Sequence[Iterable[int]], i: int, n: int | None = None) -> MergeCheck:
    """Check ``(e_s - e_t) z(pi) = (-1)^(i-1) z(pi~)``.

    ``s`` and ``t`` are the minima of parts i and i+1 (1-based) and ``pi~``
    joins those two parts.  The sign is the one valid for the normalized
    convention of this module.
    """
    parts = _normalize_parts(parts)
    if not 1 <= i < len(parts):
        raise ValueError("merge index must satisfy 1 <= i < number of parts")
    n = sum(len(p) for p in parts) if n is None else n
    s, t = parts[i - 1][0], parts[i][0]
    lhs = (ExtElement.generator(s) - ExtElement.generator(t)) * _z(parts, n).value
    merged = parts[: i - 1] + (tuple(sorted(parts[i - 1] + parts[i])),) + parts[i + 1:]
    sign = -1 if (i - 1) % 2 else 1
    rhs = _z(merged, n).value * sign
    return MergeCheck(lhs, rhs, sign, lhs == rhs)


def extension_factorization(m: Matroid, t: Iterable[int]) -> int:
    """Resolve the sign in ``z(T) = +-z(F~) e_v(p+1) ... e_v(l)``.

    F~ is the first maximal flag extending ``flagify(T)`` (covers taken in
    sorted order) and ``v(j)`` is the minimum of ``X_j - X_(j-1)``.  Returns
    the sign that makes the identity hold; raises if neither does.
    """
    t = sorted(t)
    zt = z_of_nbc(m, t).value
    f = m.flagify(t)
    chain = list(f.flats)
    while len(chain) <= m.rank:
        chain.append(m.covers(chain[-1])[0])
    full = Flag(tuple(chain))
    prod = z_of_flag(m, full).value
    for x in full.parts()[len(t):]:
        prod = prod * ExtElement.generator(min(x))
    if prod == zt:
        return 1
    if prod == -zt:
        return -1
    raise AssertionError(f"factorization fails for T={tuple(t)}")


# -- verification --------------------------------------------------------------


def _complement(n: int, t) -> int:
    return ((1 << n) - 1) & ~mask_of(t)


def tbc_sets(m: Matroid) -> list[tuple]:
    """Sets meeting every broken circuit."""
    bcs = m.broken_circuit_masks()
    out = []
    for k in range(m.n + 1):
        for s in combinations(range(1, m.n + 1), k):
            sm = mask_of(s)
            if all(b & sm for b in bcs):
                out.append(s)
    return out


def groebner_verify(m: Matroid) -> Report:
    """Leading monomials of every ``(I^0)_q`` against those generated by Z."""
    rep = Report("groebner")
    n, l = m.n, m.rank
    gens = os_generators(m)
    bases = m.nbc_sets(l)
    comps = [_complement(n, t) for t in bases]
    for t, c in zip(bases, comps):
        z = z_of_nbc(m, t).value
        rep.check(f"lead z{t}", max(z.raw, key=_lead) == c)
    per = {}
    for q in range(n + 1):
        ann = annihilator_component(gens, n, q)
        got = ann.leading_monomials()
        want = {indices_of(u) for u in all_monomial_masks(n, q) if any(u & c == c for c in comps)}
        per[q] = {"dim": ann.dim, "expected": len(want)}
        rep.check(f"degree {q}", got == want)
    rep.data["degrees"] = per
    comp_nbc = sorted(tuple(x for x in range(1, n + 1) if x not in s)
                      for k in range(n + 1) for s in m.nbc_sets(k))
    rep.check("tbc = complements of nbc", sorted(tbc_sets(m)) == comp_nbc)
    return rep


def _lead(mask):
    from . import kernels

    return kernels.deglex_key(mask)


def zp_basis_verify(m: Matroid, p: int) -> Report:
    """Z_p is a basis of ``(I^0)_(n-p)`` and a Groebner basis of the truncation."""
    rep = Report(f"zbasis p={p}")
    n = m.n
    if not 0 <= p <= m.rank:
        raise ValueError(f"p must lie in 0..{m.rank}")
    gens = os_generators(m)
    nbc = m.nbc_sets(p)
    zs = [z_of_nbc(m, t).value for t in nbc]
    ann = annihilator_component(gens, n, n - p)
    span = MonomialBasisSpace(n, n - p, zs)
    rep.data.update({"size": len(zs), "dim_ann": ann.dim, "rank": span.dim})
    rep.check("count", len(zs) == ann.dim)
    rep.check("independent", span.dim == len(zs))
    rep.check("span", span.equals(ann))
    comps = [_complement(n, t) for t in nbc]
    for k in range(n - p, n + 1):
        annk = annihilator_component(gens, n, k)
        want = {indices_of(u) for u in all_monomial_masks(n, k) if any(u & c == c for c in comps)}
        rep.check(f"leading monomials degree {k}", annk.leading_monomials() == want)
        gen = MonomialBasisSpace(n, k, (ExtElement._raw({u: 1}) * z
                                        for z in zs for u in all_monomial_masks(n, k - (n - p))))
        rep.check(f"generates degree {k}", gen.equals(annk))
    return rep


def linear_forms_of(m: Matroid, t: Iterable[int]) -> list[ExtElement]:
    """The n - l linear factors ``e_a - e_v`` of z(T) for an nbc-base T."""
    f = m.flagify(sorted(t))
    out = []
    for part in f.parts():
        v = min(part)
        for a in sorted(part):
            if a != v:
                out.append(ExtElement.generator(a) - ExtElement.generator(v))
    return out


def linear_ideal_intersection_verify(m: Matroid) -> Report:
    """``I_d`` equals the intersection of the linear ideals ``(I_T)_d``."""
    from .ideal import GradedIdeal, os_ideal

    rep = Report("linear ideals")
    n, l = m.n, m.rank
    full = os_ideal(m)
    bases = m.nbc_sets(l)
    ideals = []
    for t in bases:
        known = {d: comb(n, d) - comb(l, d) for d in range(n + 1)}
        ideals.append((t, GradedIdeal(n, linear_forms_of(m, t), known_dims=known)))
    dims = {}
    for d in range(n + 1):
        inter = None
        for _, it in ideals:
            comp = it.component(d)
            inter = comp if inter is None else inter.intersect(comp)
        target = full.component(d)
        dims[d] = {"I": target.dim, "intersection": inter.dim if inter is not None else comb(n, d)}
        rep.check(f"degree {d}", inter is not None and inter.equals(target))
    for t, it in ideals:
        z = z_of_nbc(m, t).value
        for q in range(n - l, n + 1):
            mult = MonomialBasisSpace(n, q, (ExtElement._raw({u: 1}) * z for u in all_monomial_masks(n, q - (n - l))))
            rep.check(f"ann I_{t} degree {q}", it.annihilator(q).equals(mult))
    rep.data["dims"] = dims
    return rep
