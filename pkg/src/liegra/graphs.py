"""Directed simple graphs: representation, validation, canonical forms,
automorphisms, linear extensions and enumeration.

Vertices are labeled ``1..n`` and an edge ``(u, v)`` flows from the upper
vertex ``u`` down to the lower vertex ``v``.  Internally an edge set is packed
into an integer bitmask with bit ``u * STRIDE + v`` for the 0-based edge
``u -> v``; relabeling, hashing and comparison then cost a few integer
operations, which is what keeps the series computations tractable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import factorial
from typing import Hashable, Iterator, Sequence

STRIDE = 16
ROW = (1 << STRIDE) - 1
MAX_VERTICES = STRIDE

CONNECTED = "connected-simple"
NC = "nc-simple"
MULTI = "multi"
FLAVORS = (CONNECTED, NC, MULTI)

DEFAULT_CAP_LABELED = 6
DEFAULT_CAP_ISO = 7
DEFAULT_CAP_LEVELED = 8


class GraphError(ValueError):
    """Raised for malformed graph input."""


class CapExceededError(GraphError):
    """Raised when an enumeration is asked for more vertices than allowed."""

    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: n={n} exceeds the cap {cap}")
        self.what = what
        self.n = n
        self.cap = cap


def cap_labeled() -> int:
    return int(os.environ.get("LIEGRA_CAP_LABELED", DEFAULT_CAP_LABELED))


def cap_iso() -> int:
    return int(os.environ.get("LIEGRA_CAP_ISO", DEFAULT_CAP_ISO))


# ---------------------------------------------------------------------------
# bitmask helpers (0-based vertices)


def bit(u: int, v: int) -> int:
    return 1 << (u * STRIDE + v)


def mask_of(edges) -> int:
    """Pack 1-based edges into a bitmask."""
    m = 0
    for u, v in edges:
        m |= 1 << ((u - 1) * STRIDE + v - 1)
    return m


def edges_of(mask: int) -> tuple[tuple[int, int], ...]:
    """Unpack a bitmask into a sorted tuple of 1-based edges."""
    out = []
    while mask:
        low = mask & -mask
        idx = low.bit_length() - 1
        out.append((idx // STRIDE + 1, idx % STRIDE + 1))
        mask ^= low
    return tuple(out)


def bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def out_rows(n: int, mask: int) -> list[int]:
    """Per-vertex bitmask of lower neighbours."""
    return [(mask >> (u * STRIDE)) & ROW for u in range(n)]


def in_rows(n: int, mask: int) -> list[int]:
    ins = [0] * n
    for u, row in enumerate(out_rows(n, mask)):
        for v in bits(row):
            ins[v] |= 1 << u
    return ins


def mask_acyclic(n: int, mask: int) -> bool:
    outs = out_rows(n, mask)
    left = (1 << n) - 1
    while left:
        sinks = [v for v in bits(left) if outs[v] & left == 0]
        if not sinks:
            return False
        for v in sinks:
            left &= ~(1 << v)
    return True


def mask_components(n: int, mask: int) -> list[int]:
    """Vertex sets (as bitmasks) of the undirected connected components."""
    outs = out_rows(n, mask)
    nb = outs[:]
    for u, row in enumerate(outs):
        for v in bits(row):
            nb[v] |= 1 << u
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= nb[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(comp)
    return comps


def mask_connected(n: int, mask: int) -> bool:
    return n >= 1 and len(mask_components(n, mask)) == 1


def relabel_mask(mask: int, perm: Sequence[int]) -> int:
    """Apply a 0-based vertex map ``v -> perm[v]`` to an edge mask."""
    m = 0
    while mask:
        low = mask & -mask
        idx = low.bit_length() - 1
        m |= 1 << (perm[idx // STRIDE] * STRIDE + perm[idx % STRIDE])
        mask ^= low
    return m


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True, order=True)
class DirectedGraph:
    """Labeled directed graph on vertices 1..n; edges sorted, no repeats."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        es = tuple(sorted({(int(u), int(v)) for u, v in self.edges}))
        for u, v in es:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {u}>{v} references a vertex outside 1..{self.n}")
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "DirectedGraph":
        return cls(n, edges_of(mask))

    @cached_property
    def mask(self) -> int:
        return mask_of(self.edges)

    def relabel(self, perm: Sequence[int]) -> "DirectedGraph":
        """Rename vertex v to perm[v-1] (1-based permutation)."""
        return DirectedGraph(self.n, [(perm[u - 1], perm[v - 1]) for u, v in self.edges])

    def out_neighbors(self, v: int) -> list[int]:
        return [b for a, b in self.edges if a == v]

    def in_neighbors(self, v: int) -> list[int]:
        return [a for a, b in self.edges if b == v]

    def sinks(self) -> list[int]:
        tails = {u for u, _ in self.edges}
        return [v for v in range(1, self.n + 1) if v not in tails]

    def sources(self) -> list[int]:
        heads = {v for _, v in self.edges}
        return [v for v in range(1, self.n + 1) if v not in heads]

    def is_connected(self) -> bool:
        return mask_connected(self.n, self.mask)

    def is_acyclic(self) -> bool:
        return mask_acyclic(self.n, self.mask)


@dataclass(frozen=True, order=True)
class MultiGraph:
    """Labeled directed graph whose edges form a multiset (sorted tuple)."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        es = tuple(sorted((int(u), int(v)) for u, v in self.edges))
        for u, v in es:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {u}>{v} references a vertex outside 1..{self.n}")
        object.__setattr__(self, "edges", es)

    def underlying(self) -> DirectedGraph:
        return DirectedGraph(self.n, set(self.edges))

    def relabel(self, perm: Sequence[int]) -> "MultiGraph":
        return MultiGraph(self.n, [(perm[u - 1], perm[v - 1]) for u, v in self.edges])


@dataclass(frozen=True, order=True)
class LeveledGraph:
    """A graph with vertex v placed on level ``levels[v-1]`` in 1..k (1 = bottom)."""

    graph: DirectedGraph
    levels: tuple[int, ...]
    k: int

    def level_sizes(self) -> list[int]:
        return [self.levels.count(j) for j in range(1, self.k + 1)]

    def is_bowtie(self) -> bool:
        return self.k == 3 and self.levels.count(2) == 1

    def is_total(self) -> bool:
        return self.k == self.graph.n and sorted(self.levels) == list(range(1, self.k + 1))


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative of an (optionally decorated) isomorphism class.

    ``witness[v-1]`` is the canonical label of input vertex ``v``.  ``sign``
    is the Koszul sign of that relabeling restricted to odd vertices, and
    ``zero`` flags decorated classes killed by an odd automorphism.
    """

    graph: DirectedGraph
    witness: tuple[int, ...]
    decoration: tuple | None = None
    sign: int = 1
    aut_order: int = 1
    zero: bool = False


@dataclass(frozen=True)
class IsoClass:
    """An isomorphism class together with its automorphism count."""

    graph: DirectedGraph
    aut_order: int

    @property
    def multiplicity(self) -> int:
        return factorial(self.graph.n) // self.aut_order


# ---------------------------------------------------------------------------
# validation


def validate(g, flavor: str = CONNECTED) -> list[str]:
    """Return the list of violated invariants (empty means valid)."""
    if flavor not in FLAVORS:
        raise GraphError(f"unknown flavor {flavor!r}")
    problems = []
    if g.n < 1:
        problems.append("vertex-count: a graph needs at least one vertex")
        return problems
    edges = list(g.edges)
    if any(u == v for u, v in edges):
        problems.append("self-loop")
    pairs = set(edges)
    if flavor != MULTI and len(pairs) != len(edges):
        problems.append("parallel-edge")
    if any((v, u) in pairs for u, v in pairs if u < v):
        problems.append("acyclicity: antiparallel pair")
    simple = {(u, v) for u, v in pairs if u != v}
    m = mask_of(simple)
    if not problems and not mask_acyclic(g.n, m):
        problems.append("acyclicity")
    if flavor != NC and not mask_connected(g.n, m):
        problems.append("connectivity")
    return problems


def validate_leveled(lg: LeveledGraph) -> list[str]:
    problems = validate(lg.graph, CONNECTED)
    if len(lg.levels) != lg.graph.n:
        problems.append("levels: one level per vertex required")
        return problems
    if any(not 1 <= lv <= lg.k for lv in lg.levels):
        problems.append("levels: level index outside 1..k")
    for u, v in lg.graph.edges:
        if lg.levels[u - 1] <= lg.levels[v - 1]:
            problems.append(f"levels: edge {u}>{v} does not descend")
    return problems


# ---------------------------------------------------------------------------
# canonical labeling by colour refinement plus individualization


@lru_cache(maxsize=1 << 19)
def canon(n: int, mask: int, colors: tuple, odd: int = 0):
    """Canonical labeling of a vertex-coloured digraph.

    Returns ``(cmask, perm, aut, sign, zero)`` where ``perm[v]`` is the
    0-based canonical position of vertex ``v``.  Colours are preserved in
    sorted order, so the canonical colour sequence is ``sorted(colors)``.
    ``aut`` is the order of the colour-preserving automorphism group: the
    search tree is invariant, so the leaves attaining the minimal code form a
    single orbit of that group.  ``odd`` marks the vertices whose relative
    order contributes the Koszul sign.
    """
    outs = out_rows(n, mask)
    out_l = [list(bits(r)) for r in outs]
    in_l: list[list[int]] = [[] for _ in range(n)]
    edges = []
    for u in range(n):
        for v in out_l[u]:
            in_l[v].append(u)
            edges.append((u, v))
    palette = sorted(set(colors))
    rank = {c: i for i, c in enumerate(palette)}
    start = [rank[c] for c in colors]
    odd_vs = [v for v in range(n) if odd >> v & 1]

    def refine(col):
        k = len(set(col))
        while True:
            sig = [
                (col[v], tuple(sorted(col[w] for w in out_l[v])), tuple(sorted(col[w] for w in in_l[v])))
                for v in range(n)
            ]
            keys = sorted(set(sig))
            idx = {s: i for i, s in enumerate(keys)}
            new = [idx[s] for s in sig]
            if len(keys) == k:
                return new, k
            col, k = new, len(keys)

    best = None
    leaves: list[list[int]] = []
    stack = [start]
    while stack:
        col, k = refine(stack.pop())
        if k == n:
            m = 0
            for u, v in edges:
                m |= 1 << (col[u] * STRIDE + col[v])
            if best is None or m < best:
                best, leaves = m, [col]
            elif m == best:
                leaves.append(col)
            continue
        counts = [0] * k
        for c in col:
            counts[c] += 1
        target = next(c for c in range(k) if counts[c] > 1)
        cell = [v for v in range(n) if col[v] == target]
        for v in reversed(cell):
            stack.append([2 * x + (x == target and w != v) for w, x in enumerate(col)])

    def parity(perm):
        seq = [perm[v] for v in odd_vs]
        inv = 0
        for a in range(len(seq)):
            for b in range(a + 1, len(seq)):
                inv += seq[a] > seq[b]
        return inv & 1

    p0 = parity(leaves[0])
    zero = any(parity(p) != p0 for p in leaves[1:]) if odd_vs else False
    return best if best is not None else 0, tuple(leaves[0]), len(leaves), -1 if p0 else 1, zero


def canonicalize(g, decoration: Sequence[Hashable] | None = None, odd: Sequence[bool] | None = None) -> CanonicalForm:
    """Canonical form of ``g``, decoration-aware when a decoration is given.

    ``odd[v-1]`` marks vertices carrying odd-degree decorations; their
    relative reordering determines the returned sign.
    """
    colors = tuple(decoration) if decoration is not None else (0,) * g.n
    if len(colors) != g.n:
        raise GraphError("decoration length must equal the vertex count")
    oddmask = 0
    if odd is not None:
        for v, flag in enumerate(odd):
            if flag:
                oddmask |= 1 << v
    cmask, perm, aut, sign, zero = canon(g.n, g.mask, colors, oddmask)
    deco = tuple(sorted(colors)) if decoration is not None else None
    return CanonicalForm(
        graph=DirectedGraph.from_mask(g.n, cmask),
        witness=tuple(p + 1 for p in perm),
        decoration=deco,
        sign=sign,
        aut_order=aut,
        zero=zero,
    )


def aut_order(g: DirectedGraph) -> int:
    return canon(g.n, g.mask, (0,) * g.n, 0)[2]


def leveled_aut_order(lg: LeveledGraph) -> int:
    return canon(lg.graph.n, lg.graph.mask, tuple(lg.levels), 0)[2]


def is_isomorphic(g: DirectedGraph, h: DirectedGraph) -> bool:
    return g.n == h.n and canonicalize(g).graph == canonicalize(h).graph


# ---------------------------------------------------------------------------
# linear extensions and levelizations


@lru_cache(maxsize=1 << 16)
def linext_mask(n: int, mask: int) -> int:
    """Number of top-to-bottom total orders compatible with the edges."""
    pred = [0] * n
    for u, row in enumerate(out_rows(n, mask)):
        for v in bits(row):
            pred[v] |= 1 << u
    dp = [0] * (1 << n)
    dp[0] = 1
    for s in range(1 << n):
        ways = dp[s]
        if not ways:
            continue
        for v in range(n):
            if not s >> v & 1 and pred[v] & ~s == 0:
                dp[s | 1 << v] += ways
    return dp[-1]


def linear_extension_count(g: DirectedGraph) -> int:
    return linext_mask(g.n, g.mask)


def levelization_count(g: DirectedGraph) -> int:
    """Total levelizations of the unlabeled graph: linear extensions / |Aut|."""
    ext, aut = linear_extension_count(g), aut_order(g)
    q, r = divmod(ext, aut)
    if r:
        raise ArithmeticError(f"automorphisms do not act freely on extensions of {g}")
    return q


# ---------------------------------------------------------------------------
# labeled enumeration


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _lex_dags(n: int) -> Iterator[int]:
    """All labeled DAG edge masks in lexicographic order of sorted edge lists."""
    pairs = _ordered_pairs(n)
    npairs = len(pairs)

    def dfs(start, mask, reach):
        yield mask
        for p in range(start, npairs):
            i, j = pairs[p]
            # adding i -> j closes a cycle (or doubles an edge) iff j reaches i
            if i == j or reach[j] >> i & 1 or mask & bit(j, i):
                continue
            nreach = reach[:]
            add = (1 << j) | reach[j]
            for u in range(n):
                if u == i or reach[u] >> i & 1:
                    nreach[u] |= add
            yield from dfs(p + 1, mask | bit(i, j), nreach)

    yield from dfs(0, 0, [0] * n)


def enumerate_labeled(n: int, flavor: str = CONNECTED, cap: int | None = None, max_edges: int | None = None):
    """Every valid labeled graph on n vertices, once, in (n, edge list) order.

    For the multi flavor, ``max_edges`` bounds the total edge count (default
    ``n``), since multigraphs are otherwise infinite in number.
    """
    cap = cap_labeled() if cap is None else cap
    if n < 1:
        raise GraphError("n must be at least 1")
    if n > cap:
        raise CapExceededError("labeled enumeration", n, cap)
    if flavor == MULTI:
        yield from _enumerate_multi(n, n if max_edges is None else max_edges)
        return
    if flavor not in (CONNECTED, NC):
        raise GraphError(f"unknown flavor {flavor!r}")
    for m in _lex_dags(n):
        if flavor == NC or mask_connected(n, m):
            yield DirectedGraph.from_mask(n, m)


def _enumerate_multi(n: int, max_edges: int) -> Iterator[MultiGraph]:
    out = []
    for m in _lex_dags(n):
        if not mask_connected(n, m):
            continue
        es = edges_of(m)
        extra = max_edges - len(es)
        if extra < 0:
            continue
        for mult in product(range(extra + 1), repeat=len(es)):
            if sum(mult) <= extra:
                out.append(MultiGraph(n, [e for e, k in zip(es, mult) for _ in range(k + 1)]))
    yield from sorted(out)


def enumerate_oriented(n: int) -> Iterator[DirectedGraph]:
    """All simple oriented graphs (no acyclicity or connectivity required)."""
    if n > 5:
        raise CapExceededError("oriented enumeration", n, 5)
    for choice in product((0, 1, 2), repeat=n * (n - 1) // 2):
        es = []
        for (i, j), c in zip(combinations(range(1, n + 1), 2), choice):
            if c == 1:
                es.append((i, j))
            elif c == 2:
                es.append((j, i))
        yield DirectedGraph(n, es)


def sink_peeling_dags(n: int) -> Iterator[int]:
    """All labeled DAG masks on n vertices, built by peeling the sink set.

    A DAG is determined by its nonempty sink set S, the DAG H induced on the
    other vertices, and the edges from the others into S, subject to every
    sink of H sending at least one edge into S.  Independent of ``_lex_dags``.
    """

    @lru_cache(maxsize=None)
    def dags(vs: int) -> tuple[tuple[int, int], ...]:
        # (mask, sink set) for every DAG on the vertex set vs
        if vs == 0:
            return ((0, 0),)
        return tuple(_peel(vs, dags))

    if n <= 5:
        for m, _ in dags((1 << n) - 1):
            yield m
        return
    # the top level is streamed rather than stored
    for m, _ in _peel((1 << n) - 1, dags):
        yield m


def _peel(vs: int, dags) -> Iterator[tuple[int, int]]:
    members = list(bits(vs))
    for r in range(1, len(members) + 1):
        for sinks in combinations(members, r):
            smask = sum(1 << s for s in sinks)
            rest = vs & ~smask
            others = list(bits(rest))
            subsets = [sum(1 << sinks[t] for t in range(r) if c >> t & 1) for c in range(1 << r)]
            for hmask, hsinks in dags(rest):
                options = [
                    [_row_to_mask(u, sub) for sub in (subsets[1:] if hsinks >> u & 1 else subsets)] for u in others
                ]
                for pick in product(*options):
                    m = hmask
                    for x in pick:
                        m |= x
                    yield m, smask


def _row_to_mask(u: int, targets: int) -> int:
    return targets << (u * STRIDE)


# ---------------------------------------------------------------------------
# isomorphism classes


@lru_cache(maxsize=None)
def dag_class_masks(n: int) -> tuple[int, ...]:
    """Canonical masks of all unlabeled DAGs on n vertices (any connectivity).

    Every DAG has a sink; deleting it leaves a DAG on n-1 vertices, so adding
    a new sink with every possible in-neighbourhood to each smaller class
    reaches every class.
    """
    if n == 1:
        return (0,)
    found = set()
    zero = (0,) * n
    last = n - 1
    for m in dag_class_masks(n - 1):
        for sub in range(1 << last):
            ext = m
            for u in bits(sub):
                ext |= bit(u, last)
            found.add(canon(n, ext, zero, 0)[0])
    return tuple(sorted(found, key=lambda x: edges_of(x)))


def enumerate_iso_classes(n: int, flavor: str = CONNECTED, cap: int | None = None) -> list[IsoClass]:
    """All isomorphism classes on n vertices, sorted by canonical edge list."""
    cap = cap_iso() if cap is None else cap
    if n < 1:
        raise GraphError("n must be at least 1")
    if n > cap:
        raise CapExceededError("isomorphism-class enumeration", n, cap)
    if flavor not in (CONNECTED, NC):
        raise GraphError(f"iso-class enumeration supports {CONNECTED} and {NC}")
    out = []
    zero = (0,) * n
    for m in dag_class_masks(n):
        if flavor == NC or mask_connected(n, m):
            out.append(IsoClass(DirectedGraph.from_mask(n, m), canon(n, m, zero, 0)[2]))
    return out


def enumerate_leveled(shape: Sequence[int], connected: bool = True, cap: int = DEFAULT_CAP_LEVELED) -> list[LeveledGraph]:
    """Leveled iso-classes with ``shape[j-1]`` vertices on level j (1 = bottom)."""
    if any(s < 0 for s in shape) or sum(shape) < 1:
        raise GraphError("level sizes must be nonnegative with positive total")
    n = sum(shape)
    if n > cap:
        raise CapExceededError("leveled enumeration", n, cap)
    levels = tuple(j + 1 for j, s in enumerate(shape) for _ in range(s))
    allowed = [bit(u, v) for u in range(n) for v in range(n) if levels[u] > levels[v]]
    seen = set()
    for choice in range(1 << len(allowed)):
        m = 0
        for t in bits(choice):
            m |= allowed[t]
        if connected and not mask_connected(n, m):
            continue
        seen.add(canon(n, m, levels, 0)[0])
    k = len(shape)
    return [LeveledGraph(DirectedGraph.from_mask(n, m), levels, k) for m in sorted(seen, key=edges_of)]
