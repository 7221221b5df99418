"""Sparse exterior algebra over the rationals on generators e_1, e_2, ...

A monomial ``e_S`` is written with its indices in increasing order.  Inside
an :class:`ExtElement` it is stored as a bitmask (bit ``i - 1`` for ``e_i``);
everything that leaves the class uses sorted index tuples.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from . import kernels

Monomial = tuple  # strictly increasing tuple of 1-based indices


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator index must be positive, got {i}")
        bit = 1 << (i - 1)
        if m & bit:
            raise ValueError(f"repeated index {i}")
        m |= bit
    return m


def indices_of(mask: int) -> Monomial:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class ExtElement:
    """Immutable element of the exterior algebra with rational coefficients.

    ``*`` is the wedge product (scalars act by multiplication), ``+``/``-``
    are the vector-space operations.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        if terms:
            clean = {}
            for m, c in terms.items():
                if not isinstance(c, Rational):
                    raise TypeError(f"coefficient {c!r} is not rational")
                if c:
                    clean[m] = _clean(c)
            self._terms = clean
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ExtElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, indices: Iterable[int], coeff: Rational = 1) -> "ExtElement":
        """``coeff * e_{i_1} e_{i_2} ...`` in the order given (sign applied)."""
        idx = list(indices)
        inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        if len(set(idx)) != len(idx):
            return cls()
        return cls({mask_of(idx): -coeff if inv % 2 else coeff})

    @classmethod
    def generator(cls, i: int) -> "ExtElement":
        return cls._raw({mask_of((i,)): 1})

    @classmethod
    def scalar(cls, c: Rational) -> "ExtElement":
        return cls({0: c})

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], Rational]) -> "ExtElement":
        out = cls()
        for idx, c in terms.items():
            out = out + cls.monomial(idx, c)
        return out

    # -- inspection -------------------------------------------------------

    @property
    def raw(self) -> dict:
        """The underlying ``{mask: coefficient}`` dict; do not mutate."""
        return self._terms

    def terms(self) -> dict[Monomial, Fraction]:
        """Terms keyed by index tuple, in descending deg-lex order."""
        keys = sorted(self._terms, key=kernels.deglex_key, reverse=True)
        return {indices_of(m): Fraction(self._terms[m]) for m in keys}

    def coefficient(self, indices: Iterable[int]) -> Fraction:
        return Fraction(self._terms.get(mask_of(indices), 0))

    def support(self) -> set[Monomial]:
        return {indices_of(m) for m in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("degree is defined only for nonzero homogeneous elements")
        return next(iter(degs))

    def max_index(self) -> int:
        return max((m.bit_length() for m in self._terms), default=0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExtElement):
            if isinstance(other, Rational):
                other = ExtElement.scalar(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ExtElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, Rational):
            other = ExtElement.scalar(other)
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExtElement):
            return ExtElement._raw(kernels.wedge_terms(self._terms, other._terms))
        if isinstance(other, Rational):
            if not other:
                return ExtElement()
            return ExtElement._raw({m: _clean(c * other) for m, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = ExtElement.scalar(other)
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"ExtElement({render(self)})"

    def __str__(self):
        return render(self)


def e(*indices: int) -> ExtElement:
    """Shorthand for the monomial ``e_{i_1} ... e_{i_p}`` (sign from the given order)."""
    return ExtElement.monomial(indices)


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    return a * b


def boundary(a: ExtElement) -> ExtElement:
    """The degree -1 derivation with ``d(e_i) = 1``, extended by Leibniz."""
    return ExtElement._raw(kernels.boundary_terms(a.raw))


def boundary_of_set(indices: Iterable[int]) -> ExtElement:
    return boundary(ExtElement.monomial(sorted(indices)))


def pure_from_factors(factors: Sequence[ExtElement]) -> ExtElement:
    return reduce(wedge, factors, ExtElement.scalar(1))


def deglex_compare(m1: Sequence[int], m2: Sequence[int]) -> int:
    """-1, 0 or 1 as ``e_m1`` is smaller than, equal to or larger than ``e_m2``.

    Higher degree wins; in equal degree the sorted index tuples are compared
    position by position and the larger index at the first difference wins,
    so ``e[2,3] > e[1,3] > e[1,2]``.
    """
    k1 = kernels.deglex_key(mask_of(m1))
    k2 = kernels.deglex_key(mask_of(m2))
    return (k1 > k2) - (k1 < k2)


def leading_mask(a: ExtElement) -> int:
    if not a:
        raise ValueError("the zero element has no leading monomial")
    return max(a.raw, key=kernels.deglex_key)


def leading_monomial(a: ExtElement) -> Monomial:
    return indices_of(leading_mask(a))


def all_monomial_masks(n: int, degree: int) -> list[int]:
    """All degree-``degree`` monomial masks on ``n`` generators, descending deg-lex."""
    from itertools import combinations

    masks = [mask_of(c) for c in combinations(range(1, n + 1), degree)]
    masks.sort(key=kernels.deglex_key, reverse=True)
    return masks


def relabel(a: ExtElement, perm: Mapping[int, int]) -> ExtElement:
    """Apply the algebra automorphism ``e_i -> e_perm[i]``."""
    out = ExtElement()
    for m, c in a.raw.items():
        out = out + ExtElement.monomial([perm.get(i, i) for i in indices_of(m)], c)
    return out


def is_pure(r: ExtElement, n: int | None = None) -> bool:
    """Decomposability test for a nonzero homogeneous element.

    ``r`` of degree k is a product of linear forms exactly when the linear
    forms ``v`` with ``v * r = 0`` span a k-dimensional space.
    """
    from .linalg import kernel

    if not r:
        raise ValueError("is_pure needs a nonzero element")
    if not r.is_homogeneous():
        raise ValueError("is_pure needs a homogeneous element")
    n = n if n is not None else r.max_index()
    gens = [ExtElement.generator(i) for i in range(1, n + 1)]
    ann = kernel([g * r for g in gens])
    return len(ann) == r.degree


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render(a: ExtElement) -> str:
    """Deterministic text form, e.g. ``e[2,3] - e[1,3] + 1/2*e[1,2]``."""
    if not a:
        return "0"
    parts = []
    for idx, c in a.terms().items():
        mono = "e[" + ",".join(map(str, idx)) + "]"
        mag = abs(c)
        body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if not (text.startswith("e[") and text.endswith("]")):
        raise ValueError(f"not a monomial: {text!r}")
    inner = text[2:-1].strip()
    return tuple(int(t) for t in inner.split(",")) if inner else ()
