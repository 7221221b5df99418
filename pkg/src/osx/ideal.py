"""Orlik-Solomon ideals, truncations J(p, M), annihilators and Hilbert series."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .exterior import ExtElement, all_monomial_masks, boundary_of_set
from .linalg import MonomialBasisSpace, kernel, combine
from .matroid import Matroid


def os_generators(m: Matroid) -> list[ExtElement]:
    """``d e_C`` for every circuit C."""
    return [boundary_of_set(c) for c in m.circuits]


def dependent_generators(m: Matroid, max_size: int | None = None) -> list[ExtElement]:
    """``d e_S`` for every dependent S with ``|S| <= max_size`` (default rank + 1)."""
    top = m.rank + 1 if max_size is None else max_size
    out = []
    for k in range(1, top + 1):
        for s in combinations(range(1, m.n + 1), k):
            if not m.is_independent(s):
                out.append(boundary_of_set(s))
    return out


def _monomials(n: int, d: int) -> list[ExtElement]:
    return [ExtElement._raw({mk: 1}) for mk in all_monomial_masks(n, d)]


def ideal_component(gens: Sequence[ExtElement], n: int, d: int, stop_at: int | None = None) -> MonomialBasisSpace:
    """Span of all ``m * g`` with m a monomial and ``deg m + deg g = d``."""

    def vectors():
        for g in gens:
            if not g:
                continue
            k = d - g.degree
            if k < 0:
                continue
            for mono in _monomials(n, k):
                v = mono * g
                if v:
                    yield v

    return MonomialBasisSpace(n, d, vectors(), stop_at=stop_at)


def annihilator_component(gens: Sequence[ExtElement], n: int, q: int) -> MonomialBasisSpace:
    """Degree-q part of the annihilator of the ideal generated by ``gens``.

    Starting from all of E_q, the kernel of ``a -> a * g`` is cut out one
    generator at a time.  Annihilating the generators suffices because the
    exterior algebra is graded-commutative.
    """
    basis = _monomials(n, q)
    for g in gens:
        if not basis:
            break
        if not g or g.degree + q > n:
            continue
        images = [b * g for b in basis]
        if not any(images):
            continue
        basis = [combine(c, basis) for c in kernel(images)]
    return MonomialBasisSpace(n, q, basis)


def annihilator_by_pairing(gens: Sequence[ExtElement], n: int, q: int) -> MonomialBasisSpace:
    """Same space as :func:`annihilator_component`, via the pairing with ``I_(n-q)``.

    ``a`` of degree q kills the ideal iff ``a * b = 0`` for every b in the
    complementary-degree component, since the pairing into E_n is perfect.
    """
    comp = ideal_component(gens, n, n - q)
    basis = _monomials(n, q)
    rows = comp.rref()
    if not rows:
        return MonomialBasisSpace(n, q, basis)
    top = (1 << n) - 1
    images = []
    for b in basis:
        images.append({j: (b * r).raw.get(top, 0) for j, r in enumerate(rows) if (b * r).raw.get(top, 0)})
    return MonomialBasisSpace(n, q, [combine(c, basis) for c in kernel(images)])


class GradedIdeal:
    """Homogeneous ideal of E on n generators with lazily cached components.

    Components and annihilator components are computed on first request and
    stored under a lock, so concurrent callers share one computation.
    """

    def __init__(self, n: int, generators: Sequence[ExtElement], known_dims: dict | None = None):
        for g in generators:
            if g and not g.is_homogeneous():
                raise ValueError("ideal generators must be homogeneous")
        self.n = n
        self.generators = [g for g in generators if g]
        self._known = dict(known_dims or {})
        self._comp: dict[int, MonomialBasisSpace] = {}
        self._ann: dict[int, MonomialBasisSpace] = {}
        self._lock = threading.RLock()

    def component(self, d: int) -> MonomialBasisSpace:
        with self._lock:
            if d not in self._comp:
                self._comp[d] = self._build_component(d)
            return self._comp[d]

    def _build_component(self, d: int) -> MonomialBasisSpace:
        if d < 0 or d > self.n:
            return MonomialBasisSpace(self.n, max(d, 0))
        stop = self._known.get(d)

        def vectors():
            # new generators first, then E_1 times the previous component
            for g in self.generators:
                if g.degree == d:
                    yield g
            if d > 0:
                prev = self.component(d - 1).rref()
                for i in range(1, self.n + 1):
                    ei = ExtElement.generator(i)
                    for b in prev:
                        v = ei * b
                        if v:
                            yield v

        return MonomialBasisSpace(self.n, d, vectors(), stop_at=stop)

    def dim(self, d: int) -> int:
        return self.component(d).dim

    def annihilator(self, q: int) -> MonomialBasisSpace:
        with self._lock:
            if q not in self._ann:
                self._ann[q] = annihilator_component(self.generators, self.n, q)
            return self._ann[q]

    def contains(self, v: ExtElement) -> bool:
        if not v:
            return True
        return v.is_homogeneous() and self.component(v.degree).contains(v)


def os_ideal(m: Matroid) -> GradedIdeal:
    # I_d has codimension |nbc_d|, which lets the row reduction stop early
    known = {d: comb(m.n, d) - len(m.nbc_sets(d)) for d in range(m.n + 1)}
    return GradedIdeal(m.n, os_generators(m), known_dims=known)


def j_ideal(m: Matroid, p: int) -> GradedIdeal:
    """The ideal generated by the components ``I_r(M)`` with ``r <= p``."""
    if p < 2:
        raise ValueError("J(p, M) needs p >= 2")
    full = os_ideal(m)
    gens = []
    for r in range(2, min(p, m.n) + 1):
        gens.extend(full.component(r).rref())
    return GradedIdeal(m.n, gens)


def hilbert_series(m: Matroid) -> list[int]:
    """Dimensions of ``(E/I)_p`` for ``p = 0..rank``; checked against the nbc counts."""
    ideal = os_ideal(m)
    out = []
    for p in range(m.rank + 1):
        h = comb(m.n, p) - ideal.dim(p)
        nbc = len(m.nbc_sets(p))
        if h != nbc:
            raise AssertionError(f"degree {p}: codim I_p = {h} but |nbc_p| = {nbc}")
        out.append(h)
    return out


@dataclass
class QuadraticReport:
    verdict: bool
    first_gap_degree: int | None
    dim_I: dict = field(default_factory=dict)
    dim_J2: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def is_quadratic(m: Matroid) -> QuadraticReport:
    """Compare ``J(2, M)_d`` with ``I_d`` for ``3 <= d <= rank``."""
    full = os_ideal(m)
    rep = QuadraticReport(True, None)
    if m.rank < 3:
        return rep
    j2 = j_ideal(m, 2)
    for d in range(2, m.rank + 1):
        rep.dim_I[d] = full.dim(d)
        rep.dim_J2[d] = j2.dim(d)
        if d >= 3 and rep.dim_J2[d] != rep.dim_I[d] and rep.verdict:
            rep.verdict = False
            rep.first_gap_degree = d
    return rep
