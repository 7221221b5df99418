from itertools import permutations

import networkx as nx
import pytest

from conftest import cached_fixture
from osx.casestudies import FIXTURE_NAMES
from osx.exterior import ExtElement, e
from osx.matroid import Flag, MatroidError, boolean, uniform
from osx.presentation import (close_pair_forms, close_relation, expand_to_standard, flag_relation_check,
                              gamma_tree, insert, is_early, is_neat, nbc_prime, neighbours,
                              relations_first_kind, relations_first_kind_monomial, relations_second_kind,
                              t_tree, t_tree_algorithm, trees_dot, trees_json, verify_relation_basis)
from osx.zelements import z_of_flag, z_of_nbc


def z(m, *t):
    return z_of_nbc(m, t).value


def test_neighbours_and_nbc_prime(cross_m):
    assert neighbours(cross_m, (1, 5)) == (2, 3, 4, 7)
    assert neighbours(cross_m, (1, 3)) == (5, 6, 7, 8)
    assert neighbours(boolean(2), (1,)) == (2,)
    assert nbc_prime(boolean(2)) == []
    u = nbc_prime(uniform(2, 3))
    assert [(x.S, x.N) for x in u] == [((1,), (2, 3))]
    # sum over nbc' of (|N(S)| - 1) counts the first-kind relations
    assert sum(len(x.N) - 1 for x in nbc_prime(cross_m)) == 21


def test_insert_and_early():
    assert insert((1, 5), 2, 1) == (2, 1, 5)
    assert insert((1, 5), 7, 3) == (1, 5, 7)
    assert is_early((1, 5), 7, 2) and is_early((1, 5), 2, 1)
    assert not is_early((1, 5), 2, 3)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_neat_swap_of_descent(name):
    # swapping an adjacent descent of a neat base gives another neat base
    m = cached_fixture(name)
    for t in m.nbc_sets(m.rank):
        for u in permutations(t):
            if not is_neat(m, u):
                continue
            for j in range(len(u) - 1):
                if u[j] > u[j + 1]:
                    v = u[:j] + (u[j + 1], u[j]) + u[j + 2:]
                    assert is_neat(m, v)


def test_is_neat_rejects_non_base(cross_m):
    with pytest.raises(MatroidError):
        is_neat(cross_m, (1, 2, 3))


def test_gamma_of_1_5(cross_m):
    g = gamma_tree(cross_m, (1, 5))
    assert {(v.a, v.k) for v in g.vertices} == {(2, 1), (2, 2), (3, 2), (4, 2), (7, 2), (7, 3)}
    assert (g.root.a, g.root.k) == (2, 1)
    assert sorted(v.base for v in g.leaves()) == [(1, 2, 5), (1, 3, 5), (1, 4, 5), (1, 5, 7)]
    assert t_tree(cross_m, (1, 5)).edges == [(2, 3), (2, 4), (2, 7)]


def test_gamma_of_1_3(cross_m):
    g = gamma_tree(cross_m, (1, 3))
    labels = {(p.base, c.base) for p, c in g.edges}
    assert labels == {((5, 1, 3), (1, 5, 3)), ((5, 1, 3), (1, 6, 3)), ((5, 1, 3), (1, 7, 3)),
                      ((1, 5, 3), (1, 3, 5)), ((1, 6, 3), (1, 3, 6)), ((1, 7, 3), (1, 3, 7)),
                      ((1, 7, 3), (1, 3, 8))}
    assert t_tree(cross_m, (1, 3)).edges == [(5, 6), (5, 7), (7, 8)]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_gamma_trees_are_trees(name):
    m = cached_fixture(name)
    for entry in nbc_prime(m):
        g = gamma_tree(m, entry.S)
        graph = nx.Graph()
        graph.add_nodes_from(v.base for v in g.vertices)
        graph.add_edges_from((p.base, c.base) for p, c in g.edges)
        assert nx.is_tree(graph)
        small = nx.Graph(t_tree(m, entry.S).edges)
        small.add_nodes_from(entry.N)
        assert nx.is_tree(small)
        assert t_tree_algorithm(m, entry.S).edges == t_tree(m, entry.S).edges


def test_gamma_rejects_non_nbc_prime(cross_m):
    with pytest.raises(MatroidError):
        gamma_tree(cross_m, (2, 3))
    with pytest.raises(MatroidError):
        gamma_tree(cross_m, (1,))


def test_expansions(cross_m):
    s = (1, 3)
    assert expand_to_standard(cross_m, s, 5, 1) == {(1, 3, 5): 1, (1, 3, 6): 1, (1, 3, 7): 1, (1, 3, 8): 1}
    assert expand_to_standard(cross_m, s, 6, 2) == {(1, 3, 6): -1}
    assert expand_to_standard(cross_m, s, 5, 3) == {(1, 3, 5): 1}


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_expansion_at_every_vertex(name):
    m = cached_fixture(name)
    for entry in nbc_prime(m):
        g = gamma_tree(m, entry.S)
        for v in g.vertices:
            expand_to_standard(m, entry.S, v.a, v.k, g)
            kids = g.children(v)
            if kids:
                # non-standard vertex: z(S(a,k)) = -sum of its children
                total = ExtElement()
                for c in kids:
                    total = total + z_of_flag(m, m.flagify(c.base)).value
                assert z_of_flag(m, m.flagify(v.base)).value == -total


def test_worked_relation(cross_m):
    f = cross_m.flagify((1, 6, 3))
    f2 = cross_m.flagify((5, 1, 3))
    assert f.flats == (frozenset(), {3}, {3, 6}, frozenset(range(1, 9)))
    assert f2.flats == (frozenset(), {3}, {1, 2, 3, 4}, frozenset(range(1, 9)))
    zf, zf2 = z_of_flag(cross_m, f).value, z_of_flag(cross_m, f2).value
    assert not ((e(6) - e(2)) * zf - (e(1) - e(5)) * zf2)
    m = cross_m
    std = (e(6) - e(2)) * (-z(m, 1, 3, 6)) - (e(1) - e(5)) * (z(m, 1, 3, 5) + z(m, 1, 3, 6) + z(m, 1, 3, 7)
                                                               + z(m, 1, 3, 8))
    assert not std
    # the generic close-flag form uses minima of the steps, e_6 - e_1 ...
    assert close_pair_forms(f, f2) == (6, 1, 1, 5)
    assert not close_relation(m, f, f2).evaluate(m)
    # ... and differs from the worked form by (e_1 - e_2) z(F), a second-kind relation
    assert not ((e(1) - e(2)) * zf)


def test_close_pair_forms_rejects_far_flags(cross_m):
    f = cross_m.flagify((1, 3, 5))
    with pytest.raises(ValueError):
        close_pair_forms(f, f)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_relations_vanish(name):
    m = cached_fixture(name)
    for r in relations_first_kind(m) + relations_second_kind(m):
        assert not r.evaluate(m)
        assert not r.evaluate_standard(m)


def test_relation_counts(cross_m, nine):
    assert len(relations_second_kind(cross_m)) == 70
    assert len(relations_second_kind(nine)) == 114
    assert relations_second_kind(boolean(3)) == []
    assert len(relations_first_kind(uniform(2, 3))) == 1


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_flag_relations(name):
    m = cached_fixture(name)
    for k, f in enumerate(m.maximal_flags()):
        if m.n == 9 and k % 5:
            continue
        for i in range(1, m.rank):
            assert not flag_relation_check(m, f, i)


def test_flag_relation_boolean():
    b = boolean(3)
    f = Flag((frozenset(), {1}, {1, 2}, {1, 2, 3}))
    assert not flag_relation_check(b, f, 1)
    with pytest.raises(ValueError):
        flag_relation_check(b, f, 0)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_relation_basis(name):
    m = cached_fixture(name)
    rep = verify_relation_basis(m)
    assert rep.passed, rep.failures()
    d = rep.data
    assert d["kernel_dim"] == d["first_kind"] + d["second_kind"]
    mono = relations_first_kind_monomial(m)
    assert mono.passed, mono.failures()
    assert mono.data["kernel_dim"] == d["kernel_dim"]


def test_relation_basis_numbers(cross_m, nine):
    assert verify_relation_basis(cross_m).data["kernel_dim"] == 91
    assert verify_relation_basis(nine).data["kernel_dim"] == 144


def test_exports(cross_m):
    js = trees_json(cross_m)
    assert len(js) == len(nbc_prime(cross_m))
    assert all({"gamma", "t"} <= set(x) for x in js)
    dot = trees_dot(cross_m)
    assert dot.startswith("digraph gamma_1_2 {") and dot.count("digraph") == len(js)
