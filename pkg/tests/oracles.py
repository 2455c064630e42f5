"""Brute-force oracles, written directly from the definitions and sharing no
code with the package beyond the DirectedGraph container."""
from __future__ import annotations

from collections import Counter
from itertools import chain, combinations, permutations, product

import networkx as nx

from liegra.graphs import DirectedGraph


def to_nx(g: DirectedGraph, labels=None) -> nx.DiGraph:
    h = nx.DiGraph()
    for v in range(1, g.n + 1):
        h.add_node(v, label=None if labels is None else labels[v - 1])
    h.add_edges_from(g.edges)
    return h


def nx_isomorphic(g: DirectedGraph, h: DirectedGraph) -> bool:
    return g.n == h.n and nx.is_isomorphic(to_nx(g), to_nx(h))


def brute_aut(g: DirectedGraph, labels=None) -> int:
    edges = set(g.edges)
    count = 0
    for p in permutations(range(1, g.n + 1)):
        if labels is not None and any(labels[v] != labels[p[v] - 1] for v in range(g.n)):
            continue
        if {(p[u - 1], p[v - 1]) for u, v in edges} == edges:
            count += 1
    return count


def brute_linext(g: DirectedGraph) -> int:
    """Orders listing every upper vertex before the vertices below it."""
    count = 0
    for order in permutations(range(1, g.n + 1)):
        pos = {v: i for i, v in enumerate(order)}
        if all(pos[u] < pos[v] for u, v in g.edges):
            count += 1
    return count


def all_dags(n: int, connected: bool = True) -> list[DirectedGraph]:
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    out = []
    for r in range(len(pairs) + 1):
        for es in combinations(pairs, r):
            if any((v, u) in es for u, v in es):
                continue
            h = nx.DiGraph()
            h.add_nodes_from(range(1, n + 1))
            h.add_edges_from(es)
            if not nx.is_directed_acyclic_graph(h):
                continue
            if connected and not nx.is_weakly_connected(h):
                continue
            out.append(DirectedGraph(n, es))
    return out


def nx_classes(graphs) -> list[list[DirectedGraph]]:
    classes: list[list[DirectedGraph]] = []
    for g in graphs:
        for cls in classes:
            if nx_isomorphic(cls[0], g):
                cls.append(g)
                break
        else:
            classes.append([g])
    return classes


def nonempty_subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(1, len(items) + 1))


def _insert_maps(n1: int, i: int, n2: int):
    outer = {v: v if v < i else v + n2 - 1 for v in range(1, n1 + 1) if v != i}
    inner = {w: w + i - 1 for w in range(1, n2 + 1)}
    return outer, inner


def insert_graph(g1: DirectedGraph, i: int, g2: DirectedGraph) -> Counter:
    """Lie-gra insertion: each edge at vertex i reattaches to a nonempty
    subset of the inserted vertices."""
    outer, inner = _insert_maps(g1.n, i, g2.n)
    fixed = [(outer[u], outer[v]) for u, v in g1.edges if i not in (u, v)]
    fixed += [(inner[u], inner[v]) for u, v in g2.edges]
    touching = [(u, v) for u, v in g1.edges if i in (u, v)]
    choices = []
    for u, v in touching:
        opts = []
        for sub in nonempty_subsets(inner.values()):
            if u == i:
                opts.append([(w, outer[v]) for w in sub])
            else:
                opts.append([(outer[u], w) for w in sub])
        choices.append(opts)
    out = Counter()
    for pick in product(*choices):
        out[DirectedGraph(g1.n + g2.n - 1, fixed + [e for grp in pick for e in grp])] += 1
    return out


def insert_tree(t1: DirectedGraph, i: int, t2: DirectedGraph) -> Counter:
    """RT insertion: each child edge into i picks one inserted vertex; the
    parent edge leaves from the root of t2."""
    outer, inner = _insert_maps(t1.n, i, t2.n)
    root2 = inner[next(v for v in range(1, t2.n + 1) if all(a != v for a, _ in t2.edges))]
    fixed = [(outer[u], outer[v]) for u, v in t1.edges if i not in (u, v)]
    fixed += [(inner[u], inner[v]) for u, v in t2.edges]
    fixed += [(root2, outer[v]) for u, v in t1.edges if u == i]
    kids = [outer[u] for u, v in t1.edges if v == i]
    out = Counter()
    for pick in product(inner.values(), repeat=len(kids)):
        out[DirectedGraph(t1.n + t2.n - 1, fixed + list(zip(kids, pick)))] += 1
    return out


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1 :]
        yield [[first]] + part
