"""Built-in fixtures and the two worked counterexamples.

The (9_3)_2 line set is not typed in by hand: it is the orbit of the line
{1,3,4} under the order-9 permutation tau, and every textual property the
configuration is known to have is checked against that orbit.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import comb

from .exterior import ExtElement, is_pure, relabel
from .ideal import hilbert_series, is_quadratic, j_ideal, os_ideal
from .linalg import MonomialBasisSpace, rank_of_vectors
from .matroid import Matroid, MatroidError, uniform
from .reports import Report

CROSS_LINES = ([1, 2, 3, 4], [1, 6, 7], [2, 5, 8], [3, 7, 8], [4, 5, 6])
CROSS_WITNESS = ([1, 3, 7], [2, 4, 5], [6], [8])

# two-line notation: TAU[i - 1] is the image of i
TAU = (2, 6, 1, 5, 9, 4, 8, 3, 7)

X_TERMS = (
    ((1, 2, 3, 6, 8), 1),
    ((1, 2, 4, 6, 9), -1),
    ((1, 2, 4, 8, 9), 1),
    ((1, 2, 6, 8, 9), -1),
    ((2, 3, 5, 6, 9), -1),
)
B = (1, 2, 6, 8, 9)
EXCHANGE_OUT, EXCHANGE_IN = 9, (5, 7)

# K4 edges: 1=ab 2=ac 3=ad 4=bc 5=bd 6=cd
K4_CIRCUITS = ([1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6], [1, 3, 4, 6], [1, 2, 5, 6], [2, 3, 4, 5])


class Automorphism:
    """A permutation of 1..n acting on points and on the exterior algebra."""

    def __init__(self, images, m: Matroid | None = None):
        self.images = tuple(images)
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError("not a permutation of 1..n")
        self.map = {i + 1: v for i, v in enumerate(self.images)}
        if m is not None and not m.is_automorphism(self.map):
            raise MatroidError("permutation does not preserve the circuits")

    def __call__(self, i: int) -> int:
        return self.map[i]

    def order(self) -> int:
        k, cur = 1, dict(self.map)
        while any(cur[i] != i for i in cur):
            cur = {i: self.map[cur[i]] for i in cur}
            k += 1
        return k

    def power(self, k: int) -> "Automorphism":
        cur = {i: i for i in self.map}
        for _ in range(k % self.order()):
            cur = {i: self.map[cur[i]] for i in cur}
        return Automorphism([cur[i] for i in range(1, len(self.images) + 1)])

    def on_set(self, s) -> frozenset:
        return frozenset(self.map[i] for i in s)


def apply_automorphism(sigma: Automorphism, a: ExtElement) -> ExtElement:
    return relabel(a, sigma.map)


def tau_orbit_lines() -> list[tuple]:
    tau = Automorphism(TAU)
    line = frozenset({1, 3, 4})
    out = []
    while line not in out:
        out.append(line)
        line = tau.on_set(line)
    return [tuple(sorted(x)) for x in out]


def _represents(t, line) -> bool:
    return len(set(t) & set(line)) >= 2


def nine32_constraints(lines=None) -> Report:
    """Every stated property of the configuration, checked on the derived lines."""
    lines = lines or tau_orbit_lines()
    rep = Report("(9_3)_2 fixture")
    m = Matroid.from_lines(9, lines)
    tau = Automorphism(TAU)
    rep.check("tau has order 9", tau.order() == 9)
    rep.check("tau is an automorphism", m.is_automorphism(tau.map))
    rep.check("orbit of {1,3,4} has 9 lines", len(lines) == 9 and len(set(lines)) == 9)
    rep.check("{1,3,4} and {1,2,5} are lines", (1, 3, 4) in lines and (1, 2, 5) in lines)
    rep.check("every line has 3 points", all(len(x) == 3 for x in lines))
    rep.check("every point lies on 3 lines", all(sum(p in x for x in lines) == 3 for p in range(1, 10)))
    lonely = [v for v in range(2, 10) if not any({1, v} <= set(x) for x in lines)]
    rep.check("only 6 and 8 share no line with 1", lonely == [6, 8])
    rep.check("{6,8} lies on a line", any({6, 8} <= set(x) for x in lines))
    counts = {k: [sum(_represents(t, x) for x in lines) for t in combinations(range(1, 10), k)] for k in (3, 4, 5, 6)}
    rep.check("3-sets represent a line", min(counts[3]) >= 1)
    rep.check("4-sets represent 2 to 5 lines", 2 <= min(counts[4]) and max(counts[4]) <= 5)
    rep.check("5-sets represent at most 7 lines", max(counts[5]) <= 7)
    rep.check("6-sets represent at most 8 lines", max(counts[6]) <= 8)
    rep.check("Hilbert series 1+9t+27t^2+19t^3", hilbert_series(m) == [1, 9, 27, 19])
    rep.data["lines"] = lines
    return rep


def cross() -> Matroid:
    return Matroid.from_lines(8, CROSS_LINES)


def nine_three_2() -> Matroid:
    return Matroid.from_lines(9, tau_orbit_lines())


def k4() -> Matroid:
    return Matroid(6, K4_CIRCUITS)


_UNIFORM = re.compile(r"^(?:uniform\(|u)(\d+)[,_](\d+)\)?$", re.I)


def fixture(name: str) -> Matroid:
    """``cross``, ``nine_three_2`` (or ``nine32``), ``k4`` or ``uniform(k,n)``."""
    key = name.strip().lower().replace(" ", "")
    if key == "cross":
        return cross()
    if key in ("nine_three_2", "nine32", "9_3_2"):
        return nine_three_2()
    if key == "k4":
        return k4()
    mt = _UNIFORM.match(key)
    if mt:
        return uniform(int(mt.group(1)), int(mt.group(2)))
    raise KeyError(f"unknown fixture {name!r}")


FIXTURE_NAMES = ("uniform(2,3)", "uniform(2,4)", "uniform(3,5)", "k4", "cross", "nine_three_2")


# -- the pencil in (J^0)_5 ----------------------------------------------------


def pencil_elements() -> tuple:
    """``x``, ``p = (1 - tau)(1 + tau^3 + tau^6) x`` and ``q = tau p``."""
    tau = Automorphism(TAU)
    x = ExtElement.from_terms(dict(X_TERMS))
    y = x + apply_automorphism(tau.power(3), x) + apply_automorphism(tau.power(6), x)
    p = y - apply_automorphism(tau, y)
    q = apply_automorphism(tau, p)
    return x, p, q


def sample_points(count: int = 120) -> list[tuple]:
    """Distinct projective points (alpha : beta) with small rational coordinates."""
    pts, seen = [], set()
    h = 1
    while len(pts) < count:
        for a in range(-h, h + 1):
            for b in range(-h, h + 1):
                if (a, b) == (0, 0):
                    continue
                r = Fraction(a, b) if b else None
                key = ("inf",) if b == 0 else (r,)
                if key not in seen:
                    seen.add(key)
                    pts.append((a, b))
        h += 1
    return pts[:count]


def pencil_analysis(samples: int = 120) -> Report:
    rep = Report("pencil")
    m = nine_three_2()
    x, p, q = pencil_elements()
    j = j_ideal(m, 2)
    ann = j.annihilator(5)
    rep.check("p in (J^0)_5", ann.contains(p))
    rep.check("q in (J^0)_5", ann.contains(q))
    rep.check("dim (J^0)_5 = 2", ann.dim == 2)
    rep.check("span{p,q} = (J^0)_5", MonomialBasisSpace(9, 5, [p, q]).equals(ann))
    rep.check("I^0_5 is smaller", os_ideal(m).annihilator(5).dim < ann.dim)
    pb, qb = p.coefficient(B), q.coefficient(B)
    rep.check("B in support of p", pb != 0)
    rep.check("B not in support of q", qb == 0)
    ex = [tuple(sorted(set(B) - {EXCHANGE_OUT} | {y})) for y in EXCHANGE_IN]
    rep.check("exchange sets absent from p and q",
              all(p.coefficient(s) == 0 and q.coefficient(s) == 0 for s in ex))
    # a second support member B' without 9 whose new points are 5 and 7 only;
    # the coefficient vectors (p, q) of the candidates must have rank 2 so that
    # some candidate survives in every combination alpha p + beta q
    cands = [tuple(sorted(set(B) - {EXCHANGE_OUT, y} | set(EXCHANGE_IN))) for y in B if y != EXCHANGE_OUT]
    vecs = [{0: p.coefficient(c), 1: q.coefficient(c)} for c in cands]
    vecs = [{k: v for k, v in d.items() if v} for d in vecs]
    rep.check("a second support set forces an exchange", rank_of_vectors(vecs) == 2)
    tau = Automorphism(TAU)
    rep.check("q = tau p and tau^9 = 1", apply_automorphism(tau.power(9), p) == p)
    pts = sample_points(samples)
    pure = [(a, b) for a, b in pts if is_pure(p * a + q * b, 9)]
    rep.check(f"no pure element at {len(pts)} sample points", not pure and len(pts) >= 100)
    rep.data.update({"p": p, "q": q, "x": x, "coefficient_B": {"p": pb, "q": qb},
                     "exchange_sets": ex, "second_candidates": cands, "samples": len(pts)})
    return rep


def dimension_audit(m: Matroid | None = None) -> Report:
    m = m or nine_three_2()
    rep = Report("dimensions")
    full = os_ideal(m)
    j2 = j_ideal(m, 2)
    d3, j3 = full.dim(3), j2.dim(3)
    h = hilbert_series(m)
    rep.data.update({"dim_I3": d3, "dim_J2_3": j3, "hilbert": h, "bound": (m.n - 2) * len(j2.generators)})
    rep.check("dim I_3 = C(n,3) - h_3", d3 == comb(m.n, 3) - (h[3] if len(h) > 3 else 0))
    rep.check("dim J_3 <= 7 * #generators", j3 <= (m.n - 2) * len(j2.generators))
    rep.check("dim J_3 < dim I_3", j3 < d3)
    q = is_quadratic(m)
    rep.check("not quadratic, gap at degree 3", not q.verdict and q.first_gap_degree == 3)
    return rep


def cross_report() -> Report:
    from .criteria import gluing_check, graph_component_check, is_line_closed, is_p_independent_matroid
    from .criteria import circuit_transversals, is_partition_p_independent, is_partition_independent

    m = cross()
    rep = Report("cross")
    rep.check("line-closed", is_line_closed(m).verdict)
    ind = is_p_independent_matroid(m, 3)
    rep.check("not 3-independent", not ind.verdict)
    rep.check("witness is 3-independent", is_partition_p_independent(m, CROSS_WITNESS, 3))
    rep.check("witness is not independent", not is_partition_independent(m, CROSS_WITNESS))
    rep.check("14 nbc-bases", len(m.nbc_sets(3)) == 14)
    rep.check("not quadratic", not is_quadratic(m).verdict)
    g = graph_component_check(m)
    rep.check("graph with 4 components", g.data.get("max_components") == 4)
    glue = [gluing_check(m, CROSS_WITNESS, s) for s in circuit_transversals(m, CROSS_WITNESS)]
    rep.check("gluing identity", all(r.passed for r in glue) and bool(glue))
    rep.data.update({"witness": ind.witness, "hilbert": hilbert_series(m)})
    return rep
