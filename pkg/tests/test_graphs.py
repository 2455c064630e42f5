from __future__ import annotations

import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegra import graphs as G
from liegra.graphs import DirectedGraph, LeveledGraph, MultiGraph
from oracles import all_dags, brute_aut, brute_linext, nx_classes, nx_isomorphic


@st.composite
def dags(draw, max_n=5, connected=False):
    n = draw(st.integers(1, max_n))
    order = draw(st.permutations(range(1, n + 1)))
    pairs = [(order[a], order[b]) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = DirectedGraph(n, chosen)
    if connected and not g.is_connected():
        g = DirectedGraph(n, chosen + [(order[a], order[a + 1]) for a in range(n - 1)])
    return g


def test_edges_are_sorted_and_deduplicated():
    g = DirectedGraph(3, [(3, 1), (2, 1), (3, 1)])
    assert g.edges == ((2, 1), (3, 1))
    assert g.sinks() == [1] and g.sources() == [2, 3]


def test_relabel_moves_edges():
    g = DirectedGraph(3, [(2, 1)])
    assert g.relabel([3, 1, 2]).edges == ((1, 3),)


def test_out_of_range_edge_rejected():
    with pytest.raises(G.GraphError):
        DirectedGraph(2, [(1, 3)])


@pytest.mark.parametrize(
    "g, flavor, expected",
    [
        (DirectedGraph(2, [(1, 1), (2, 1)]), G.CONNECTED, "self-loop"),
        (MultiGraph(2, [(2, 1), (2, 1)]), G.CONNECTED, "parallel-edge"),
        (DirectedGraph(2, [(1, 2), (2, 1)]), G.CONNECTED, "acyclicity: antiparallel pair"),
        (DirectedGraph(3, [(1, 2), (2, 3), (3, 1)]), G.CONNECTED, "acyclicity"),
        (DirectedGraph(3, [(2, 1)]), G.CONNECTED, "connectivity"),
        (DirectedGraph(0), G.NC, "vertex-count: a graph needs at least one vertex"),
    ],
)
def test_validate_reports_each_violation(g, flavor, expected):
    assert expected in G.validate(g, flavor)


def test_validate_accepts_valid_graphs():
    assert G.validate(DirectedGraph(3, [(3, 2), (2, 1)])) == []
    assert G.validate(DirectedGraph(3, [(2, 1)]), G.NC) == []
    assert G.validate(MultiGraph(2, [(2, 1), (2, 1)]), G.MULTI) == []


def test_validate_leveled():
    good = LeveledGraph(DirectedGraph(2, [(2, 1)]), (1, 2), 2)
    bad = LeveledGraph(DirectedGraph(2, [(2, 1)]), (1, 1), 2)
    assert G.validate_leveled(good) == []
    assert any("does not descend" in p for p in G.validate_leveled(bad))


@given(dags(), st.randoms())
@settings(max_examples=150, deadline=None)
def test_canonical_form_is_relabeling_invariant(g, rnd):
    perm = list(range(1, g.n + 1))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    cg, ch = G.canonicalize(g), G.canonicalize(h)
    assert cg.graph == ch.graph
    assert cg.aut_order == ch.aut_order
    # the witness maps the input onto the canonical graph
    assert g.relabel(cg.witness) == cg.graph


@given(dags(max_n=5))
@settings(max_examples=150, deadline=None)
def test_aut_and_linear_extensions_match_brute_force(g):
    assert G.aut_order(g) == brute_aut(g)
    assert G.linear_extension_count(g) == brute_linext(g)


@given(dags(max_n=5, connected=True))
@settings(max_examples=100, deadline=None)
def test_levelizations_are_extensions_over_automorphisms(g):
    assert G.levelization_count(g) * brute_aut(g) == brute_linext(g)


def test_is_isomorphic_agrees_with_networkx():
    graphs = list(G.enumerate_labeled(3, G.NC))
    rng = random.Random(7)
    graphs4 = rng.sample(list(G.enumerate_labeled(4)), 40)
    for pool in (graphs, graphs4):
        for g in pool:
            for h in pool:
                assert G.is_isomorphic(g, h) == nx_isomorphic(g, h)


def test_decorated_canonical_form_separates_colours():
    g = DirectedGraph(2, [(2, 1)])
    a = G.canonicalize(g, ("x", "y"))
    b = G.canonicalize(g, ("y", "x"))
    assert a.decoration == b.decoration == ("x", "y")
    assert a.graph != b.graph


def test_koszul_sign_and_odd_zero():
    edgeless = DirectedGraph(2)
    ab = G.canonicalize(edgeless, ("a", "b"), odd=(True, True))
    ba = G.canonicalize(edgeless, ("b", "a"), odd=(True, True))
    assert ab.sign * ba.sign == -1
    # swapping two equal odd decorations is an odd automorphism
    assert G.canonicalize(edgeless, ("a", "a"), odd=(True, True)).zero
    assert not G.canonicalize(edgeless, ("a", "a"), odd=(False, False)).zero
    # the two tops of the sink-join are exchanged by an automorphism
    join = DirectedGraph(3, [(2, 1), (3, 1)])
    assert G.canonicalize(join, ("c", "a", "a"), odd=(False, True, True)).zero


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 18), (4, 446)])
def test_labeled_counts(n, expected):
    assert sum(1 for _ in G.enumerate_labeled(n)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_labeled_enumeration_matches_brute_force(n):
    assert set(G.enumerate_labeled(n)) == set(all_dags(n))
    assert set(G.enumerate_labeled(n, G.NC)) == set(all_dags(n, connected=False))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sink_peeling_agrees_with_edge_subset_enumeration(n):
    lex = sorted(g.mask for g in G.enumerate_labeled(n, G.NC, cap=6))
    peeled = sorted(G.sink_peeling_dags(n))
    assert lex == peeled


def test_iso_class_counts():
    assert [len(G.enumerate_iso_classes(n)) for n in range(1, 6)] == [1, 1, 4, 24, 267]
    assert [len(G.enumerate_iso_classes(n, G.NC)) for n in range(1, 6)] == [1, 2, 6, 31, 302]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_iso_classes_match_networkx_partition(n):
    ours = G.enumerate_iso_classes(n)
    theirs = nx_classes(all_dags(n))
    assert len(ours) == len(theirs)
    assert sorted(len(c) for c in theirs) == sorted(c.multiplicity for c in ours)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_orbit_sizes_sum_to_labeled_count(n):
    total = sum(factorial(n) // c.aut_order for c in G.enumerate_iso_classes(n))
    assert total == sum(1 for _ in G.enumerate_labeled(n))


def test_caps_raise_and_follow_environment(monkeypatch):
    with pytest.raises(G.CapExceededError):
        list(G.enumerate_labeled(7))
    monkeypatch.setenv("LIEGRA_CAP_LABELED", "3")
    with pytest.raises(G.CapExceededError):
        list(G.enumerate_labeled(4))
    monkeypatch.setenv("LIEGRA_CAP_ISO", "2")
    with pytest.raises(G.CapExceededError):
        G.enumerate_iso_classes(3)


def test_multigraph_enumeration_counts_edge_budget():
    # the edge budget defaults to n: on two vertices, one or two parallel edges either way
    assert len(list(G.enumerate_labeled(2, G.MULTI))) == 4
    assert all(len(g.edges) <= 3 for g in G.enumerate_labeled(3, G.MULTI))
    assert all(len(g.edges) == 2 for g in G.enumerate_labeled(3, G.MULTI, max_edges=2))


def test_oriented_graphs_count():
    assert sum(1 for _ in G.enumerate_oriented(3)) == 27
    assert sum(1 for g in G.enumerate_oriented(3) if g.is_acyclic()) == 25


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1)])
def test_leveled_classes_match_brute_force(shape):
    ours = G.enumerate_leveled(shape)
    assert all(G.validate_leveled(lg) == [] for lg in ours)
    n = sum(shape)
    levels = tuple(j + 1 for j, s in enumerate(shape) for _ in range(s))
    labeled = [
        g for g in all_dags(n)
        if all(levels[u - 1] > levels[v - 1] for u, v in g.edges)
    ]
    # classes up to level-preserving relabeling, via orbit counting
    orbit_total = 0
    for lg in ours:
        aut = G.leveled_aut_order(lg)
        assert aut == brute_aut(lg.graph, lg.levels)
        size = 1
        for s in shape:
            size *= factorial(s)
        orbit_total += size // aut
    assert orbit_total == len(labeled)
