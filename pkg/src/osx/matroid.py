"""Simple matroids given by circuits, and the combinatorics built on them.

Points are labelled 1..n.  Subsets handed back to callers are sorted tuples
or frozensets; internally they are bitmasks (bit ``i - 1`` for point ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .exterior import indices_of, mask_of


class MatroidError(ValueError):
    """Invalid matroid data."""


def _fs(mask: int) -> frozenset:
    return frozenset(indices_of(mask))


@dataclass(frozen=True)
class Flag:
    """Chain of flats ``X_0 = {} < X_1 < ... < X_k`` (``flats[i]`` has rank i)."""

    flats: tuple

    def __post_init__(self):
        object.__setattr__(self, "flats", tuple(frozenset(x) for x in self.flats))
        if not self.flats or self.flats[0]:
            raise MatroidError("a flag starts with the empty flat")
        for a, b in zip(self.flats, self.flats[1:]):
            if not a < b:
                raise MatroidError("flag flats must be strictly increasing")

    def __len__(self):
        return len(self.flats) - 1

    def __getitem__(self, i):
        return self.flats[i]

    def parts(self) -> list[frozenset]:
        """The ordered differences ``X_i minus X_(i-1)``."""
        return [b - a for a, b in zip(self.flats, self.flats[1:])]

    def replace(self, i: int, flat: Iterable[int]) -> "Flag":
        flats = list(self.flats)
        flats[i] = frozenset(flat)
        return Flag(tuple(flats))

    def __str__(self):
        return " < ".join("{" + ",".join(map(str, sorted(x))) + "}" for x in self.flats)


class Matroid:
    """A simple matroid on ``{1, ..., n}`` described by its circuits.

    Instances are immutable.  Rank values are memoised in a plain dict; the
    cached values are pure functions of the mask, so concurrent readers can
    only ever observe correct entries.
    """

    def __init__(self, n: int, circuits: Iterable[Iterable[int]]):
        if not isinstance(n, int) or n < 1:
            raise MatroidError(f"ground set size must be a positive integer, got {n!r}")
        masks = set()
        for c in circuits:
            c = list(c)
            for x in c:
                if not isinstance(x, int) or not 1 <= x <= n:
                    raise MatroidError(f"circuit {sorted(c)} has a point outside 1..{n}")
            if len(set(c)) != len(c):
                raise MatroidError(f"circuit {c} repeats a point")
            if len(c) <= 2:
                raise MatroidError(f"circuit {sorted(c)} has size {len(c)}; the matroid must be simple")
            masks.add(mask_of(c))
        for a in masks:
            for b in masks:
                if a != b and a & b == a:
                    raise MatroidError(f"circuit {list(indices_of(a))} lies inside circuit {list(indices_of(b))}")
        self.n = n
        self._cmasks = tuple(sorted(masks, key=lambda m: (m.bit_count(), indices_of(m))))
        self._rank_cache: dict[int, int] = {}
        self.ground = (1 << n) - 1
        self.rank = self.rank_of_mask(self.ground)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_circuits(cls, n: int, circuits: Iterable[Iterable[int]]) -> "Matroid":
        return cls(n, circuits)

    @classmethod
    def from_lines(cls, n: int, lines: Iterable[Iterable[int]]) -> "Matroid":
        """Rank-3 matroid of a point-line configuration.

        Circuits are the collinear triples and the 4-sets without one.
        """
        lines = [frozenset(l) for l in lines]
        for l in lines:
            if len(l) < 3:
                raise MatroidError(f"line {sorted(l)} has fewer than 3 points")
            for x in l:
                if not isinstance(x, int) or not 1 <= x <= n:
                    raise MatroidError(f"line {sorted(l)} has a point outside 1..{n}")
        for a, b in combinations(lines, 2):
            if len(a & b) > 1:
                raise MatroidError(f"lines {sorted(a)} and {sorted(b)} share more than one point")
        triples = {frozenset(t) for l in lines for t in combinations(sorted(l), 3)}
        circuits = [sorted(t) for t in triples]
        for q in combinations(range(1, n + 1), 4):
            if not any(frozenset(t) in triples for t in combinations(q, 3)):
                circuits.append(list(q))
        return cls(n, circuits)

    @classmethod
    def from_json(cls, obj) -> "Matroid":
        """Build from ``{"ground_set": n, "circuits": [...]}`` or ``{"ground_set": n, "lines": [...]}``."""
        if not isinstance(obj, dict):
            raise MatroidError("top level: expected a JSON object")
        if "ground_set" not in obj:
            raise MatroidError("field 'ground_set': missing")
        n = obj["ground_set"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise MatroidError(f"field 'ground_set': expected a positive integer, got {n!r}")
        has_c, has_l = "circuits" in obj, "lines" in obj
        if has_c == has_l:
            raise MatroidError("exactly one of the fields 'circuits' and 'lines' must be present")
        key = "circuits" if has_c else "lines"
        sets = obj[key]
        if not isinstance(sets, list):
            raise MatroidError(f"field '{key}': expected a list of lists")
        for i, s in enumerate(sets):
            if not isinstance(s, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in s):
                raise MatroidError(f"field '{key}[{i}]': expected a list of integers")
            if s != sorted(s):
                raise MatroidError(f"field '{key}[{i}]': entries must be sorted increasingly")
        try:
            return cls.from_circuits(n, sets) if has_c else cls.from_lines(n, sets)
        except MatroidError as exc:
            raise MatroidError(f"field '{key}': {exc}") from None

    def to_json(self) -> dict:
        return {"ground_set": self.n, "circuits": [list(c) for c in self.circuits]}

    def validate_axioms(self) -> list[tuple]:
        """Brute-force circuit elimination; returns violating ``(C1, C2, x)`` triples."""
        bad = []
        for a, b in combinations(self._cmasks, 2):
            common = a & b
            while common:
                low = common & -common
                union = (a | b) & ~low
                if not any(c & union == c for c in self._cmasks):
                    bad.append((indices_of(a), indices_of(b), indices_of(low)[0]))
                common ^= low
        return bad

    # -- basic queries -----------------------------------------------------

    @property
    def circuits(self) -> list[tuple]:
        return [indices_of(m) for m in self._cmasks]

    @property
    def circuit_masks(self) -> tuple:
        return self._cmasks

    def _mask(self, s) -> int:
        if isinstance(s, int):
            return s
        m = mask_of(s)
        if m >> self.n:
            raise MatroidError(f"subset {sorted(s)} is not inside 1..{self.n}")
        return m

    def is_independent_mask(self, m: int) -> bool:
        return not any(c & m == c for c in self._cmasks)

    def is_independent(self, s: Iterable[int]) -> bool:
        return self.is_independent_mask(self._mask(list(s)))

    def rank_of_mask(self, m: int) -> int:
        r = self._rank_cache.get(m)
        if r is None:
            cur = 0
            rest = m
            while rest:
                low = rest & -rest
                if self.is_independent_mask(cur | low):
                    cur |= low
                rest ^= low
            r = cur.bit_count()
            self._rank_cache[m] = r
        return r

    def rank_of(self, s: Iterable[int]) -> int:
        return self.rank_of_mask(self._mask(list(s)))

    def closure_mask(self, m: int) -> int:
        r = self.rank_of_mask(m)
        out = m
        for i in range(self.n):
            bit = 1 << i
            if not m & bit and self.rank_of_mask(m | bit) == r:
                out |= bit
        return out

    def closure(self, s: Iterable[int]) -> frozenset:
        return _fs(self.closure_mask(self._mask(list(s))))

    def is_flat(self, s: Iterable[int]) -> bool:
        m = self._mask(list(s))
        return self.closure_mask(m) == m

    # -- broken circuits and nbc sets ----------------------------------------

    def broken_circuits(self) -> list[tuple]:
        seen = []
        for c in self._cmasks:
            b = c & (c - 1)  # drop the smallest element
            if b not in seen:
                seen.append(b)
        return [indices_of(b) for b in seen]

    def broken_circuit_masks(self) -> list[int]:
        return [self._mask(b) for b in self.broken_circuits()]

    def is_nbc(self, t: Iterable[int]) -> bool:
        """Min-closure test: ``i_r = min cl{i_r, ..., i_p}`` for every r."""
        t = sorted(t)
        if not self.is_independent(t):
            return False
        for r in range(len(t)):
            if min(self.closure(t[r:])) != t[r]:
                return False
        return True

    def is_nbc_by_containment(self, t: Iterable[int]) -> bool:
        m = self._mask(list(t))
        return not any(b & m == b for b in self.broken_circuit_masks())

    def nbc_sets(self, p: int) -> list[tuple]:
        if not 0 <= p <= self.n:
            return []
        bcs = self.broken_circuit_masks()
        out = []
        for t in combinations(range(1, self.n + 1), p):
            m = mask_of(t)
            if not any(b & m == b for b in bcs):
                out.append(t)
        return out

    def nbc_counts(self) -> list[int]:
        return [len(self.nbc_sets(p)) for p in range(self.rank + 1)]

    # -- flats and flags -----------------------------------------------------

    def covers(self, flat: Iterable[int]) -> list[frozenset]:
        """Flats of rank one higher that contain ``flat``."""
        m = self._mask(list(flat))
        out, seen = [], set()
        for i in range(self.n):
            bit = 1 << i
            if m & bit:
                continue
            y = self.closure_mask(m | bit)
            if y not in seen:
                seen.add(y)
                out.append(y)
        return [_fs(y) for y in sorted(out, key=indices_of)]

    def flats(self, r: int) -> list[frozenset]:
        level = [frozenset()] if r >= 0 else []
        for _ in range(r):
            nxt = {}
            for x in level:
                for y in self.covers(x):
                    nxt[y] = None
            level = sorted(nxt, key=lambda s: sorted(s))
        return level

    def lines(self) -> list[frozenset]:
        """Rank-2 flats with at least three points."""
        return [x for x in self.flats(2) if len(x) >= 3]

    def flats_between(self, lower: Iterable[int], upper: Iterable[int]) -> list[frozenset]:
        """Flats ``Y`` with ``lower < Y < upper``, ranks differing by 2 overall."""
        x, z = self._mask(list(lower)), self._mask(list(upper))
        if x & z != x or self.rank_of_mask(z) - self.rank_of_mask(x) != 2:
            raise MatroidError("flats_between needs nested flats whose ranks differ by 2")
        out, seen = [], set()
        rest = z & ~x
        while rest:
            low = rest & -rest
            y = self.closure_mask(x | low)
            if y not in seen:
                seen.add(y)
                out.append(y)
            rest ^= low
        return [_fs(y) for y in out]

    def flagify(self, u: Sequence[int]) -> Flag:
        """Flag whose rank-p flat is the closure of the last p entries of ``u``."""
        u = list(u)
        if not self.is_independent(u) or len(set(u)) != len(u):
            raise MatroidError(f"{tuple(u)} is not independent")
        k = len(u)
        return Flag(tuple(self.closure(u[k - p:]) if p else frozenset() for p in range(k + 1)))

    def is_maximal_flag(self, f: Flag) -> bool:
        return len(f) == self.rank and all(
            self.is_flat(x) and self.rank_of(x) == i for i, x in enumerate(f.flats)
        )

    def check_flag(self, f: Flag, maximal: bool = True) -> None:
        for i, x in enumerate(f.flats):
            if not self.is_flat(x) or self.rank_of(x) != i:
                raise MatroidError(f"flat {sorted(x)} at position {i} is not a rank-{i} flat")
        if maximal and len(f) != self.rank:
            raise MatroidError("flag is not maximal")

    def phi(self, f: Flag) -> tuple:
        """Ordered base ``u`` with ``flagify(u) == f``; ``u_p`` is the minimum of the rank-(l-p+1) step."""
        self.check_flag(f, maximal=False)
        k = len(f)
        return tuple(min(f[k - p + 1] - f[k - p]) for p in range(1, k + 1))

    def partition_of_flag(self, f: Flag) -> list[frozenset]:
        return f.parts()

    def maximal_flags(self) -> Iterator[Flag]:
        def grow(chain):
            if len(chain) == self.rank + 1:
                yield Flag(tuple(chain))
                return
            for y in self.covers(chain[-1]):
                yield from grow(chain + [y])

        yield from grow([frozenset()])

    # -- misc ----------------------------------------------------------------

    def is_automorphism(self, perm: dict[int, int]) -> bool:
        image = {self._mask([perm[i] for i in c]) for c in self.circuits}
        return image == set(self._cmasks)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self._cmasks == other._cmasks

    def __hash__(self):
        return hash((self.n, self._cmasks))

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank}, circuits={len(self._cmasks)})"


def matroid_from_circuits(n: int, circuits) -> Matroid:
    return Matroid.from_circuits(n, circuits)


def matroid_from_lines(n: int, lines) -> Matroid:
    return Matroid.from_lines(n, lines)


def uniform(k: int, n: int) -> Matroid:
    """The uniform matroid U_{k,n}: every (k+1)-subset is a circuit."""
    if k >= n:
        return Matroid(n, [])
    return Matroid(n, combinations(range(1, n + 1), k + 1))


def boolean(n: int) -> Matroid:
    return Matroid(n, [])
