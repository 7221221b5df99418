"""Exact linear algebra on spaces spanned by exterior monomials.

Rows are sparse integer vectors reduced fraction-free; rational inputs are
cleared of denominators first.  Pivots are the deg-lex leading monomials,
so the pivot set of a reduced basis is exactly the set of leading monomials
of the spanned subspace.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Callable, Iterable, Sequence

from . import kernels
from .exterior import ExtElement, all_monomial_masks, indices_of


def integral(*vectors: dict) -> tuple[dict, ...]:
    """Scale rational sparse vectors by one common factor so all become integral."""
    den = 1
    for terms in vectors:
        for c in terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    return tuple({k: int(c * den) for k, c in terms.items()} for terms in vectors)


class Echelon:
    """Incremental reduced row echelon form over Q.

    With ``track=True`` every row remembers the combination of inserted
    vectors (by the tags passed to :meth:`insert`) that produced it, which is
    how kernels are read off.
    """

    def __init__(self, track: bool = False, lead: Callable[[int], int] | None = None):
        self.rows: dict = {}
        self.tags: dict | None = {} if track else None
        self._lead = lead if lead is not None else kernels.deglex_key

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        (v,) = integral(vec)
        v, _ = kernels.reduce_row(v, None, self.rows, None)
        return v

    def insert(self, vec: dict, tag: dict | None = None):
        """Add ``vec``; returns None if it was independent.

        If ``vec`` was dependent, returns the tracked combination that
        vanishes (an empty dict when not tracking).
        """
        if self.tags is not None:
            v, tv = integral(vec, tag if tag is not None else {})
        else:
            (v,) = integral(vec)
            tv = None
        v, tv = kernels.reduce_row(v, tv, self.rows, self.tags)
        if not v:
            return tv if tv is not None else {}
        pivot = max(v, key=self._lead)
        kernels.insert_row(self.rows, self.tags, v, tv, pivot)
        return None

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list[int]:
        return sorted(self.rows, key=self._lead, reverse=True)

    def rref(self) -> list[dict]:
        """Rows with pivot coefficient 1, sorted by descending pivot."""
        out = []
        for p in self.pivots():
            row = self.rows[p]
            d = row[p]
            out.append({k: Fraction(c, d) for k, c in row.items()})
        return out


class MonomialBasisSpace:
    """Subspace of the degree-``degree`` part of the exterior algebra on ``n`` generators."""

    def __init__(self, n: int, degree: int, vectors: Iterable[ExtElement] = (), *, stop_at: int | None = None):
        self.n = n
        self.degree = degree
        self._ech = Echelon()
        full = comb(n, degree) if stop_at is None else stop_at
        for v in vectors:
            if not v:
                continue
            if v.degrees() != {degree}:
                raise ValueError(f"vector of degree {sorted(v.degrees())} in a degree-{degree} space")
            self._ech.insert(v.raw)
            if len(self._ech) >= full:
                break

    @classmethod
    def full(cls, n: int, degree: int) -> "MonomialBasisSpace":
        return cls(n, degree, (ExtElement._raw({m: 1}) for m in all_monomial_masks(n, degree)))

    def ambient(self) -> list[tuple]:
        return [indices_of(m) for m in all_monomial_masks(self.n, self.degree)]

    @property
    def dim(self) -> int:
        return self._ech.rank

    def __len__(self) -> int:
        return self.dim

    def rref(self) -> list[ExtElement]:
        return [ExtElement(r) for r in self._ech.rref()]

    basis = rref

    def leading_monomials(self) -> set[tuple]:
        return {indices_of(p) for p in self._ech.pivots()}

    def contains(self, v: ExtElement) -> bool:
        if not v:
            return True
        if v.degrees() != {self.degree}:
            return False
        return self._ech.contains(v.raw)

    __contains__ = contains

    def is_subspace_of(self, other: "MonomialBasisSpace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.rref())

    def equals(self, other: "MonomialBasisSpace") -> bool:
        self._check(other)
        return self.dim == other.dim and self.is_subspace_of(other)

    def __eq__(self, other):
        if not isinstance(other, MonomialBasisSpace):
            return NotImplemented
        return (self.n, self.degree) == (other.n, other.degree) and self.equals(other)

    __hash__ = None

    def intersect(self, other: "MonomialBasisSpace") -> "MonomialBasisSpace":
        self._check(other)
        a, b = self.rref(), other.rref()
        # a_i combos minus b_j combos in the kernel give the intersection
        combos = kernel([*a, *[-x for x in b]])
        vecs = []
        for c in combos:
            v = ExtElement()
            for i, coef in c.items():
                if i < len(a):
                    v = v + a[i] * coef
            vecs.append(v)
        return MonomialBasisSpace(self.n, self.degree, vecs)

    def __repr__(self):
        return f"MonomialBasisSpace(n={self.n}, degree={self.degree}, dim={self.dim})"

    def _check(self, other):
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("spaces live in different ambient components")


def dim(vectors: Sequence[ExtElement]) -> int:
    ech = Echelon()
    for v in vectors:
        if v:
            ech.insert(v.raw)
    return ech.rank


def rank_of_vectors(vectors: Iterable[dict]) -> int:
    ech = Echelon(lead=_plain_key)
    for v in vectors:
        if v:
            ech.insert(v)
    return ech.rank


def _plain_key(k):
    return k


def kernel(images: Sequence[ExtElement | dict]) -> list[dict[int, Fraction]]:
    """Basis of the kernel of the linear map sending basis vector ``j`` to ``images[j]``.

    Kernel vectors are returned as ``{j: coefficient}`` dicts.  Images may be
    ExtElements or raw sparse dicts whose keys are mutually comparable.
    """
    ech = Echelon(track=True, lead=_plain_key)
    out = []
    for j, img in enumerate(images):
        raw = img.raw if isinstance(img, ExtElement) else img
        dep = ech.insert(raw, {j: 1})
        if dep is not None:
            out.append({k: Fraction(c) for k, c in dep.items()})
    return out


def combine(coeffs: dict, vectors: Sequence[ExtElement]) -> ExtElement:
    out = ExtElement()
    for j, c in coeffs.items():
        out = out + vectors[j] * c
    return out


def kernel_elements(domain: Sequence[ExtElement], images: Sequence[ExtElement]) -> list[ExtElement]:
    """Kernel of ``domain[j] -> images[j]`` expressed back in the domain."""
    return [combine(c, domain) for c in kernel(images)]
