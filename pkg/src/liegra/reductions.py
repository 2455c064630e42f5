"""Reductions of the graph theory to rooted trees and ladders.

The rooted-tree data here (tree factorials, symmetry factors) is computed
from the tree structure directly, independently of the general graph
canonicalizer, so it can serve as an oracle for the projected exponential.
"""
from __future__ import annotations

from math import factorial

from . import graphs as G
from .algebra import Series
from .graphs import DirectedGraph
from .operad import (
    LAD,
    LIEGRA,
    RT,
    GraphSum,
    compose_lad,
    compose_liegra,
    compose_rt,
    include,
    is_ladder,
    is_rooted_tree,
    labeled_basis,
    project_rt_to_lad,
    project_to_rt,
)


def _children(t: DirectedGraph) -> dict[int, list[int]]:
    # children of v are the upper vertices with an edge into v
    kids: dict[int, list[int]] = {v: [] for v in range(1, t.n + 1)}
    for u, v in t.edges:
        kids[v].append(u)
    return kids


def _root(t: DirectedGraph) -> int:
    (r,) = t.sinks()
    return r


def tree_code(t: DirectedGraph) -> str:
    """Nested-parenthesis code of a rooted tree, identical for isomorphic trees."""
    kids = _children(t)

    def code(v):
        return "(" + "".join(sorted(code(c) for c in kids[v])) + ")"

    return code(_root(t))


def tree_factorial(t: DirectedGraph) -> int:
    """Product over vertices of the size of the subtree they root."""
    kids = _children(t)
    prod = 1

    def size(v):
        nonlocal prod
        s = 1 + sum(size(c) for c in kids[v])
        prod *= s
        return s

    size(_root(t))
    return prod


def tree_symmetry(t: DirectedGraph) -> int:
    """Order of the automorphism group, from multiplicities of equal subtrees."""
    kids = _children(t)

    def code(v):
        return "(" + "".join(sorted(code(c) for c in kids[v])) + ")"

    def sym(v):
        groups: dict[str, list[int]] = {}
        for c in kids[v]:
            groups.setdefault(code(c), []).append(c)
        total = 1
        for members in groups.values():
            total *= factorial(len(members)) * sym(members[0]) ** len(members)
        return total

    return sym(_root(t))


def connes_moscovici(t: DirectedGraph) -> int:
    """Number of increasing labelings of t up to symmetry: n!/(t! sigma(t))."""
    q, r = divmod(factorial(t.n), tree_factorial(t) * tree_symmetry(t))
    if r:
        raise ArithmeticError("non-integral Connes-Moscovici coefficient")
    return q


def project_series(s: Series, to: str) -> Series:
    """Keep the terms whose graph is a rooted tree (``rt``) or a ladder (``lad``)."""
    test = is_rooted_tree if to == RT else is_ladder
    return s.filter(lambda k: test(DirectedGraph.from_mask(k[0], k[1])))


def rooted_tree_classes(n: int) -> list[DirectedGraph]:
    return [c.graph for c in G.enumerate_iso_classes(n) if is_rooted_tree(c.graph)]


def projection_morphism_failures(cap: int = 3) -> list[str]:
    """Check proj(g1 o_i g2) = proj(g1) o_i proj(g2) for both projections."""
    failures = []
    basis = [g for n in range(1, cap + 1) for g in labeled_basis(LIEGRA, n)]
    for g1 in basis:
        for g2 in basis:
            for i in range(1, g1.n + 1):
                lhs = project_to_rt(compose_liegra(g1, i, g2))
                p1, p2 = project_to_rt(g1), project_to_rt(g2)
                if p1.terms and p2.terms:
                    rhs = compose_rt(g1, i, g2)
                else:
                    rhs = GraphSum.zero(RT, g1.n + g2.n - 1)
                if lhs != rhs:
                    failures.append(f"rt: {g1.edges} o_{i} {g2.edges}")
                if is_rooted_tree(g1) and is_rooted_tree(g2):
                    lhs2 = project_rt_to_lad(compose_rt(g1, i, g2))
                    if is_ladder(g1) and is_ladder(g2):
                        rhs2 = compose_lad(g1, i, g2)
                    else:
                        rhs2 = GraphSum.zero(LAD, g1.n + g2.n - 1)
                    if lhs2 != rhs2:
                        failures.append(f"lad: {g1.edges} o_{i} {g2.edges}")
    return failures


def inclusion_failures() -> dict[str, tuple[GraphSum, GraphSum]]:
    """Concrete pairs where the inclusions RT -> Lie-gra and Lad -> RT fail to
    commute with composition: the 2-chain inserted into the bottom of a 2-chain."""
    chain = DirectedGraph(2, [(1, 2)])
    out = {}
    in_gra = include(LIEGRA, compose_rt(chain, 2, chain))
    direct = compose_liegra(chain, 2, chain)
    if in_gra != direct:
        out["rt->liegra"] = (in_gra, direct)
    in_rt = include(RT, compose_lad(chain, 2, chain))
    direct_rt = compose_rt(chain, 2, chain)
    if in_rt != direct_rt:
        out["lad->rt"] = (in_rt, direct_rt)
    return out
