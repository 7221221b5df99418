"""Line-closure, p-independence of partitions and matroids, and related checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import prod
from typing import Iterable, Sequence

from . import kernels
from .exterior import ExtElement, boundary_of_set, mask_of
from .matroid import Matroid, MatroidError
from .reports import Report
from .zelements import z_of_partition

GRAPH_CAP = 10**7


@dataclass
class CriterionReport:
    """Verdict plus an optional witness; the witness is set only when the verdict is False."""

    verdict: bool
    witness: object = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_json(self):
        from .reports import jsonable

        return {"verdict": self.verdict, "witness": jsonable(self.witness), "details": jsonable(self.details)}


def _check_size(m: Matroid, max_n: int):
    if m.n > max_n:
        raise MatroidError(f"n = {m.n} exceeds the enumeration limit {max_n}")


# -- line closure --------------------------------------------------------------


def _meets_twice(c: int, blocks: list[int]) -> bool:
    return sum(1 for b in blocks if c & b) < c.bit_count()


def three_circuits(m: Matroid) -> list[int]:
    return [c for c in m.circuit_masks if c.bit_count() == 3]


def _line_closure_mask(tri: list[int], s: int) -> int:
    changed = True
    while changed:
        changed = False
        for c in tri:
            if c & s != c and (c & s).bit_count() >= 2:
                s |= c
                changed = True
    return s


def line_closure(m: Matroid, s: Iterable[int]) -> frozenset:
    """Smallest superset of S containing every 3-circuit it meets in two points."""
    from .exterior import indices_of

    return frozenset(indices_of(_line_closure_mask(three_circuits(m), mask_of(s))))


def is_line_closed(m: Matroid, max_n: int = 12) -> CriterionReport:
    """Every line-closed subset is a flat.  For rank 3 the shortcut is also run."""
    from .exterior import indices_of

    _check_size(m, max_n)
    tri = three_circuits(m)
    witness = None
    n_lcl = 0
    for s in range(1 << m.n):
        if _line_closure_mask(tri, s) != s:
            continue
        n_lcl += 1
        if m.closure_mask(s) != s:
            witness = indices_of(s)
            break
    rep = CriterionReport(witness is None, witness, {"lcl_sets_checked": n_lcl})
    if m.rank == 3:
        full = (1 << m.n) - 1
        short = all(
            _line_closure_mask(tri, mask_of(t)) == full
            for t in combinations(range(1, m.n + 1), 3)
            if m.is_independent(t)
        )
        rep.details["rank3_shortcut"] = short
        if short != rep.verdict:
            raise AssertionError("rank-3 line-closure shortcut disagrees with the general check")
    return rep


# -- partitions ----------------------------------------------------------------


def _parts(m: Matroid, partition) -> list[frozenset]:
    parts = [frozenset(p) for p in partition]
    if any(not p for p in parts):
        raise ValueError("empty part")
    union = set()
    for p in parts:
        if union & p:
            raise ValueError("parts overlap")
        union |= p
    if union != set(range(1, m.n + 1)):
        raise ValueError(f"parts do not cover 1..{m.n}")
    return parts


def _check_p(m: Matroid, p: int):
    if not 3 <= p <= m.rank + 1:
        raise ValueError(f"p must lie in 3..{m.rank + 1}")


def is_partition_p_independent(m: Matroid, partition, p: int) -> bool:
    """Every circuit with at most p points meets some part twice."""
    _check_p(m, p)
    blocks = [mask_of(x) for x in _parts(m, partition)]
    return all(_meets_twice(c, blocks) for c in m.circuit_masks if c.bit_count() <= p)


def is_partition_p_independent_transversal(m: Matroid, partition, p: int) -> bool:
    """The definition: picking one point from each of at most p parts gives an independent set."""
    _check_p(m, p)
    parts = [sorted(x) for x in _parts(m, partition)]
    for k in range(1, min(p, len(parts)) + 1):
        for chosen in combinations(parts, k):
            for pick in product(*chosen):
                if not m.is_independent(pick):
                    return False
    return True


def is_partition_independent(m: Matroid, partition) -> bool:
    return is_partition_p_independent(m, partition, m.rank + 1)


def partition_from_rgs(rgs: Sequence[int]) -> list[tuple]:
    parts: dict = {}
    for i, b in enumerate(rgs):
        parts.setdefault(b, []).append(i + 1)
    return [tuple(parts[b]) for b in sorted(parts)]


def is_p_independent_matroid(m: Matroid, p: int, max_n: int = 12, stop_first: bool = False) -> CriterionReport:
    """Every p-independent partition of [n] is independent (exhaustive search)."""
    _check_p(m, p)
    _check_size(m, max_n)
    small = [c for c in m.circuit_masks if c.bit_count() <= p]
    full = list(m.circuit_masks)
    total, n_pind, n_bad, wit = kernels.search_partitions(m.n, small, full, stop_first)
    witness = partition_from_rgs(wit) if wit is not None else None
    details = {"partitions": total, "p_independent": n_pind, "p_independent_not_independent": n_bad,
               "p": p, "independent_case": p == m.rank + 1}
    return CriterionReport(witness is None, witness, details)


def graph_component_check(m: Matroid, cap: int = GRAPH_CAP) -> Report:
    """Rank-3 rephrasing through graphs with an edge on every line.

    A 3-independent partition has every line meeting at most two parts, and
    so every line contributes an edge inside one part; conversely the
    components of a graph with an edge on each line form a 3-independent
    partition only when every line has exactly 3 points.  The component
    bound is therefore an exact test for 3-point-line configurations and a
    sufficient one otherwise ("exact" in the data).
    """
    if m.rank != 3:
        raise MatroidError("graph_component_check needs a rank-3 matroid")
    lines = [sorted(x) for x in m.lines()]
    choices = [[(a - 1, b - 1) for a, b in combinations(line, 2)] for line in lines]
    size = prod(len(c) for c in choices) if choices else 1
    exact = all(len(x) == 3 for x in lines)
    rep = Report("graph components")
    rep.data.update({"lines": len(lines), "assignments": size, "exact": exact})
    enum = is_p_independent_matroid(m, 3)
    if size > cap:
        rep.data["fallback"] = "partition enumeration"
        rep.data["verdict"] = enum.verdict
        return rep
    if not choices:
        best, best_idx = m.n, []
    else:
        best, best_idx, visited = kernels.max_components(m.n, choices, 0)
        rep.data["visited"] = visited
    graph_ok = best <= 3
    rep.data.update({"max_components": best, "verdict": graph_ok, "enumeration_verdict": enum.verdict})
    if best_idx:
        rep.data["edges"] = [(u + 1, v + 1) for (u, v) in (choices[i][j] for i, j in enumerate(best_idx))]
    rep.check("graph bound implies 3-independence", not graph_ok or enum.verdict)
    if exact:
        rep.check("agrees with enumeration", graph_ok == enum.verdict)
    return rep


# -- algebraic consequences ----------------------------------------------------


def partition_annihilates(m: Matroid, partition, p: int, order=None) -> bool:
    """``z(pi) * d(e_S) = 0`` for every dependent S with ``|S| <= p``."""
    parts = order or [sorted(x) for x in _parts(m, partition)]
    z = z_of_partition(parts, m.n).value
    for k in range(3, p + 1):
        for s in combinations(range(1, m.n + 1), k):
            if not m.is_independent(s) and z * boundary_of_set(s):
                return False
    return True


def gluing_check(m: Matroid, partition, s: Iterable[int]) -> Report:
    """``z(pi) * d(e_S) = +-z(pi-bar)`` where pi-bar glues the parts meeting S.

    S should be a dependent transversal of a 3-independent partition.  The
    glued part takes the position of the first part it absorbs.
    """
    parts = [tuple(sorted(x)) for x in _parts(m, partition)]
    s = set(s)
    rep = Report("gluing")
    if any(len(s & set(x)) > 1 for x in parts):
        raise ValueError("S must meet every part at most once")
    z = z_of_partition(parts, m.n).value
    lhs = z * boundary_of_set(s)
    touched = [i for i, x in enumerate(parts) if s & set(x)]
    glued = tuple(sorted(x for i in touched for x in parts[i]))
    bar = []
    for i, x in enumerate(parts):
        if i == touched[0]:
            bar.append(glued)
        elif i not in touched:
            bar.append(x)
    rhs = z_of_partition(bar, m.n).value
    sign = 1 if lhs == rhs else (-1 if lhs == -rhs else 0)
    rep.data.update({"S": sorted(s), "glued": bar, "sign": sign})
    rep.check("nonzero", bool(lhs))
    rep.check("equal up to sign", sign != 0)
    return rep


def circuit_transversals(m: Matroid, partition) -> list[tuple]:
    from .exterior import indices_of

    blocks = [mask_of(x) for x in _parts(m, partition)]
    return [indices_of(c) for c in m.circuit_masks if not _meets_twice(c, blocks)]


def implication_chain(m: Matroid, max_n: int = 12) -> Report:
    """quadratic => 3-independent => line-closed."""
    from .ideal import is_quadratic

    rep = Report("implications")
    quad = is_quadratic(m).verdict
    lcl = is_line_closed(m, max_n).verdict
    ind3 = is_p_independent_matroid(m, 3, max_n).verdict if m.rank >= 2 else True
    rep.data.update({"quadratic": quad, "three_independent": ind3, "line_closed": lcl})
    rep.check("quadratic => 3-independent", not quad or ind3)
    rep.check("3-independent => line-closed", not ind3 or lcl)
    return rep
