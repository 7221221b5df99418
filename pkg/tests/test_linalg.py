"""Exact linear algebra, checked against sympy's rational matrices."""

from fractions import Fraction
from itertools import combinations

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from osx.exterior import ExtElement, all_monomial_masks, boundary_of_set, e, mask_of
from osx.linalg import Echelon, MonomialBasisSpace, dim, integral, kernel, kernel_elements, rank_of_vectors

N, D = 5, 2
AMBIENT = list(combinations(range(1, N + 1), D))
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)
vec = st.dictionaries(st.sampled_from(AMBIENT), rationals, max_size=5).map(ExtElement.from_terms)
vecs = st.lists(vec, max_size=7)


def to_matrix(vs):
    return sympy.Matrix([[sympy.Rational(v.coefficient(m).numerator, v.coefficient(m).denominator)
                          for m in AMBIENT] for v in vs]) if vs else sympy.zeros(0, len(AMBIENT))


@settings(max_examples=80, deadline=None)
@given(vecs)
def test_dim_matches_sympy_rank(vs):
    assert dim(vs) == to_matrix(vs).rank()
    assert MonomialBasisSpace(N, D, vs).dim == to_matrix(vs).rank()


@settings(max_examples=60, deadline=None)
@given(vecs)
def test_kernel_is_exact_and_complete(vs):
    ker = kernel(vs)
    assert len(ker) == len(vs) - to_matrix(vs).rank()
    for c in ker:
        total = ExtElement()
        for j, coef in c.items():
            total = total + vs[j] * coef
        assert not total
    assert rank_of_vectors(ker) == len(ker)


@settings(max_examples=60, deadline=None)
@given(vecs)
def test_rref_and_leading_monomials(vs):
    sp = MonomialBasisSpace(N, D, vs)
    basis = sp.rref()
    assert MonomialBasisSpace(N, D, basis).equals(sp)
    # sympy's rref on columns in descending deg-lex order gives the same pivots
    order = [mask_of(m) for m in AMBIENT]
    desc = all_monomial_masks(N, D)
    perm = [order.index(x) for x in desc]
    mat = to_matrix(vs)
    if mat.rows:
        _, piv = mat.extract(list(range(mat.rows)), perm).rref()
        want = {AMBIENT[perm[p]] for p in piv}
    else:
        want = set()
    assert sp.leading_monomials() == want


@settings(max_examples=60, deadline=None)
@given(vecs, vecs)
def test_intersection_dimension_formula(a, b):
    sa, sb = MonomialBasisSpace(N, D, a), MonomialBasisSpace(N, D, b)
    both = MonomialBasisSpace(N, D, a + b)
    inter = sa.intersect(sb)
    assert inter.dim == sa.dim + sb.dim - both.dim
    assert inter.is_subspace_of(sa) and inter.is_subspace_of(sb)


@given(vec)
def test_membership(v):
    sp = MonomialBasisSpace(N, D, [v])
    assert sp.contains(v) and sp.contains(v * 3) and sp.contains(ExtElement())
    assert MonomialBasisSpace.full(N, D).contains(v)


def test_small_examples():
    d123 = boundary_of_set([1, 2, 3])
    assert MonomialBasisSpace(3, 2, [d123]).dim == 1
    assert MonomialBasisSpace(3, 2, [d123]).leading_monomials() == {(2, 3)}
    gens = [e(i) for i in range(1, 5)]
    ker = kernel_elements(gens, [g * e(1, 2) for g in gens])
    assert len(ker) == 2
    assert MonomialBasisSpace(4, 1, ker).equals(MonomialBasisSpace(4, 1, [e(1), e(2)]))


def test_wrong_degree_rejected():
    import pytest

    with pytest.raises(ValueError):
        MonomialBasisSpace(3, 2, [e(1)])
    assert not MonomialBasisSpace(3, 2).contains(e(1))


def test_integral_common_denominator():
    a, b = integral({1: Fraction(1, 2)}, {2: Fraction(2, 3)})
    assert a == {1: 3} and b == {2: 4}


def test_echelon_tracking_reports_dependency():
    ech = Echelon(track=True)
    assert ech.insert({1: 1}, {0: 1}) is None
    assert ech.insert({2: 1}, {1: 1}) is None
    dep = ech.insert({1: 2, 2: 2}, {2: 1})
    assert dep is not None and set(dep) == {0, 1, 2}
