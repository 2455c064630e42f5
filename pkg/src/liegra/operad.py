"""Partial and full compositions in the graph operads.

Five flavors are supported:

* ``liegra``: connected directed simple graphs; every edge incident to the
  insertion vertex is reattached to a nonempty subset of the inserted graph.
* ``ncgra``: the same rule without the connectivity requirement.
* ``mgra``: multigraphs; each edge copy is reattached to exactly one vertex.
* ``rt``: rooted trees (unique sink); the children of the insertion vertex
  each pick one vertex of the inserted tree and the parent edge leaves from
  its root.
* ``lad``: ladders (chains); the inserted ladder is spliced in.

Compositions are computed on raw keys (edge bitmasks, or sorted edge tuples
for multigraphs) and wrapped into :class:`GraphSum` at the API boundary.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from typing import Iterable, Sequence

from . import graphs as G
from .graphs import DirectedGraph, GraphError, MultiGraph

LIEGRA = "liegra"
NCGRA = "ncgra"
MGRA = "mgra"
RT = "rt"
LAD = "lad"
OPERAD_FLAVORS = (LIEGRA, RT, LAD, NCGRA, MGRA)


class CompositionError(GraphError):
    """Invalid composition input (bad index, wrong shape or arity)."""


# ---------------------------------------------------------------------------
# shape predicates


def is_rooted_tree(g: DirectedGraph) -> bool:
    return len(g.edges) == g.n - 1 and len(g.sinks()) == 1 and g.is_connected()


def is_ladder(g: DirectedGraph) -> bool:
    if not is_rooted_tree(g):
        return False
    heads = [v for _, v in g.edges]
    return len(heads) == len(set(heads))


def _check(flavor: str, g) -> None:
    if flavor == MGRA:
        if not isinstance(g, MultiGraph) or G.validate(g, G.MULTI):
            raise CompositionError(f"not a valid multigraph: {g}")
        return
    if not isinstance(g, DirectedGraph):
        raise CompositionError(f"{flavor} composition expects a DirectedGraph")
    kind = G.NC if flavor == NCGRA else G.CONNECTED
    problems = G.validate(g, kind)
    if problems:
        raise CompositionError(f"invalid {flavor} input {g}: {problems}")
    if flavor == RT and not is_rooted_tree(g):
        raise CompositionError(f"not a rooted tree: {g}")
    if flavor == LAD and not is_ladder(g):
        raise CompositionError(f"not a ladder: {g}")


# ---------------------------------------------------------------------------
# raw compositions (0-based internals, 1-based index i)


def _shift_maps(n1: int, i: int, n2: int):
    i0 = i - 1
    f1 = [v if v < i0 else v + n2 - 1 for v in range(n1)]
    f2 = [w + i0 for w in range(n2)]
    return i0, f1, f2


@lru_cache(maxsize=None)
def _subset_rows(n2: int, offset: int, allow_empty: bool) -> tuple[int, ...]:
    """Bitmasks (over shifted vertices) of the admissible reattachment sets."""
    start = 0 if allow_empty else 1
    return tuple(s << offset for s in range(start, 1 << n2))


def compose_simple_raw(n1: int, m1: int, i: int, n2: int, m2: int, allow_empty: bool = False) -> tuple[int, ...]:
    """Lie-gra (and nc) partial composition on edge masks."""
    if n1 + n2 <= 6:
        return _compose_simple_cached(n1, m1, i, n2, m2, allow_empty)
    return _compose_simple(n1, m1, i, n2, m2, allow_empty)


@lru_cache(maxsize=1 << 16)
def _compose_simple_cached(n1, m1, i, n2, m2, allow_empty):
    return _compose_simple(n1, m1, i, n2, m2, allow_empty)


def _compose_simple(n1: int, m1: int, i: int, n2: int, m2: int, allow_empty: bool) -> tuple[int, ...]:
    i0, f1, f2 = _shift_maps(n1, i, n2)
    base = G.relabel_mask(m2, f2)
    options = []
    for u, v in G.edges_of(m1):
        u, v = u - 1, v - 1
        if u == i0:
            rows = _subset_rows(n2, i0, allow_empty)
            col = f1[v]
            # each subset S of inserted vertices sends an edge w -> col
            options.append([_column(s, col) for s in rows])
        elif v == i0:
            rows = _subset_rows(n2, i0, allow_empty)
            options.append([s << (f1[u] * G.STRIDE) for s in rows])
        else:
            base |= G.bit(f1[u], f1[v])
    return tuple(or_products(base, options))


def or_products(base: int, options: Sequence[Sequence[int]]) -> list[int]:
    """``base | x1 | ... | xk`` for every choice of ``xj`` in ``options[j]``."""
    out = [base]
    for opts in options:
        out = [m | x for m in out for x in opts]
    return out


def _column(rowset: int, col: int) -> int:
    """Edges w -> col for every vertex w in the bitmask ``rowset``."""
    m = 0
    for w in G.bits(rowset):
        m |= G.bit(w, col)
    return m


def compose_rt_raw(n1: int, m1: int, i: int, n2: int, m2: int) -> tuple[int, ...]:
    i0, f1, f2 = _shift_maps(n1, i, n2)
    base = G.relabel_mask(m2, f2)
    root2 = next(w for w in range(n2) if (m2 >> (w * G.STRIDE)) & G.ROW == 0)
    options = []
    for u, v in G.edges_of(m1):
        u, v = u - 1, v - 1
        if v == i0:
            options.append([G.bit(f1[u], f2[w]) for w in range(n2)])
        elif u == i0:
            base |= G.bit(f2[root2], f1[v])
        else:
            base |= G.bit(f1[u], f1[v])
    return tuple(or_products(base, options))


def compose_lad_raw(n1: int, m1: int, i: int, n2: int, m2: int) -> tuple[int, ...]:
    i0, f1, f2 = _shift_maps(n1, i, n2)
    m = G.relabel_mask(m2, f2)
    heads = 0
    for w in range(n2):
        heads |= (m2 >> (w * G.STRIDE)) & G.ROW
    top2 = next(w for w in range(n2) if not heads >> w & 1)
    bottom2 = next(w for w in range(n2) if (m2 >> (w * G.STRIDE)) & G.ROW == 0)
    for u, v in G.edges_of(m1):
        u, v = u - 1, v - 1
        if v == i0:
            m |= G.bit(f1[u], f2[top2])
        elif u == i0:
            m |= G.bit(f2[bottom2], f1[v])
        else:
            m |= G.bit(f1[u], f1[v])
    return (m,)


def compose_mgra_raw(n1: int, e1: tuple, i: int, n2: int, e2: tuple) -> tuple[tuple, ...]:
    """Each copy of an edge at vertex i picks one inserted vertex; copies are
    indistinguishable, so every resulting multigraph appears exactly once."""
    i0, f1, f2 = _shift_maps(n1, i, n2)
    base = [(f2[u - 1], f2[v - 1]) for u, v in e2]
    groups: Counter = Counter()
    for u, v in e1:
        u, v = u - 1, v - 1
        if u == i0:
            groups[("down", f1[v])] += 1
        elif v == i0:
            groups[("up", f1[u])] += 1
        else:
            base.append((f1[u], f1[v]))
    options = []
    for (kind, other), mult in sorted(groups.items()):
        choices = []
        for ws in combinations_with_replacement(range(n2), mult):
            if kind == "down":
                choices.append([(f2[w], other) for w in ws])
            else:
                choices.append([(other, f2[w]) for w in ws])
        options.append(choices)
    out = []
    for pick in product(*options):
        es = list(base)
        for part in pick:
            es.extend(part)
        out.append(tuple(sorted((u + 1, v + 1) for u, v in es)))
    return tuple(out)


def compose_raw(flavor: str, n1: int, k1, i: int, n2: int, k2, allow_empty: bool = False):
    if flavor in (LIEGRA, NCGRA):
        return compose_simple_raw(n1, k1, i, n2, k2, allow_empty)
    if allow_empty:
        raise CompositionError("the corrupted rule only exists for simple-graph flavors")
    if flavor == RT:
        return compose_rt_raw(n1, k1, i, n2, k2)
    if flavor == LAD:
        return compose_lad_raw(n1, k1, i, n2, k2)
    if flavor == MGRA:
        return compose_mgra_raw(n1, k1, i, n2, k2)
    raise CompositionError(f"unknown flavor {flavor!r}")


def _key(flavor: str, g):
    return g.edges if flavor == MGRA else g.mask


def _graph(flavor: str, n: int, key):
    return MultiGraph(n, key) if flavor == MGRA else DirectedGraph.from_mask(n, key)


# ---------------------------------------------------------------------------
# GraphSum


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class GraphSum:
    """Finite rational combination of labeled graphs of one flavor and arity."""

    flavor: str
    arity: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {g: Fraction(c) for g, c in self.terms.items() if c != 0}
        for g in clean:
            if g.n != self.arity:
                raise CompositionError(f"term {g} has arity {g.n}, expected {self.arity}")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, flavor: str, g) -> "GraphSum":
        return cls(flavor, g.n, {g: Fraction(1)})

    @classmethod
    def zero(cls, flavor: str, arity: int) -> "GraphSum":
        return cls(flavor, arity, {})

    @classmethod
    def from_keys(cls, flavor: str, n: int, keys: Iterable, coeff: Fraction = Fraction(1)) -> "GraphSum":
        acc: dict = {}
        for k in keys:
            g = _graph(flavor, n, k)
            acc[g] = acc.get(g, 0) + coeff
        return cls(flavor, n, acc)

    def __eq__(self, other):
        if not isinstance(other, GraphSum):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.flavor == other.flavor
        return (self.flavor, self.arity, self.terms) == (other.flavor, other.arity, other.terms)

    def __hash__(self):
        return hash((self.flavor, self.arity, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "GraphSum") -> "GraphSum":
        self._compatible(other)
        acc = dict(self.terms)
        for g, c in other.terms.items():
            acc[g] = acc.get(g, 0) + c
        return GraphSum(self.flavor, self.arity, acc)

    def __sub__(self, other: "GraphSum") -> "GraphSum":
        return self + other.scale(-1)

    def scale(self, c) -> "GraphSum":
        return GraphSum(self.flavor, self.arity, {g: c * v for g, v in self.terms.items()})

    def _compatible(self, other: "GraphSum"):
        if self.flavor != other.flavor:
            raise CompositionError(f"flavor mismatch {self.flavor} vs {other.flavor}")
        if self.terms and other.terms and self.arity != other.arity:
            raise CompositionError(f"arity mismatch {self.arity} vs {other.arity}")

    def relabel(self, perm: Sequence[int]) -> "GraphSum":
        return GraphSum(self.flavor, self.arity, {g.relabel(perm): c for g, c in self.terms.items()})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (t[0].n, t[0].edges))

    def compose(self, i: int, other: "GraphSum") -> "GraphSum":
        """Bilinear extension of the partial composition."""
        if self.flavor != other.flavor:
            raise CompositionError("flavor mismatch")
        n = self.arity + other.arity - 1
        acc: dict = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                for k in compose_raw(self.flavor, g1.n, _key(self.flavor, g1), i, g2.n, _key(self.flavor, g2)):
                    g = _graph(self.flavor, n, k)
                    acc[g] = acc.get(g, 0) + c1 * c2
        return GraphSum(self.flavor, n, acc)

    def to_dict(self) -> dict:
        from .formats import graph_to_dict

        return {
            "flavor": self.flavor,
            "arity": self.arity,
            "terms": [{"coeff": _frac_str(c), "graph": graph_to_dict(g)} for g, c in self.sorted_terms()],
        }

    def difference_report(self, other: "GraphSum") -> list[str]:
        diff = self - other
        return [
            f"{g.edges}: {self.terms.get(g, 0)} vs {other.terms.get(g, 0)}" for g, _ in diff.sorted_terms()
        ]


# ---------------------------------------------------------------------------
# public partial compositions


def _compose(flavor: str, g1, i: int, g2) -> GraphSum:
    _check(flavor, g1)
    _check(flavor, g2)
    if not 1 <= i <= g1.n:
        raise CompositionError(f"insertion index {i} outside 1..{g1.n}")
    keys = compose_raw(flavor, g1.n, _key(flavor, g1), i, g2.n, _key(flavor, g2))
    return GraphSum.from_keys(flavor, g1.n + g2.n - 1, keys)


def compose_liegra(g1: DirectedGraph, i: int, g2: DirectedGraph) -> GraphSum:
    return _compose(LIEGRA, g1, i, g2)


def compose_ncgra(g1: DirectedGraph, i: int, g2: DirectedGraph) -> GraphSum:
    return _compose(NCGRA, g1, i, g2)


def compose_rt(t1: DirectedGraph, i: int, t2: DirectedGraph) -> GraphSum:
    return _compose(RT, t1, i, t2)


def compose_lad(l1: DirectedGraph, i: int, l2: DirectedGraph) -> GraphSum:
    return _compose(LAD, l1, i, l2)


def compose_mgra(g1: MultiGraph, i: int, g2: MultiGraph) -> GraphSum:
    return _compose(MGRA, g1, i, g2)


def compose(flavor: str, g1, i: int, g2) -> GraphSum:
    return _compose(flavor, g1, i, g2)


def full_compose(flavor: str, g, hs: Sequence, order: Sequence[int] | None = None) -> GraphSum:
    """Insert ``hs[k-1]`` at vertex k of ``g`` for every k, by iterated ∘_i.

    ``order`` lists the vertices of ``g`` in the order the insertions are
    performed (default: last vertex first); the result does not depend on it.
    """
    if len(hs) != g.n:
        raise CompositionError(f"arity mismatch: {g.n} slots, {len(hs)} arguments")
    order = list(order) if order is not None else list(range(g.n, 0, -1))
    if sorted(order) != list(range(1, g.n + 1)):
        raise CompositionError("insertion order must list every vertex once")
    result = GraphSum.of(flavor, g)
    sizes = [h.n for h in hs]
    done: set[int] = set()
    for k in order:
        # the current position of original vertex k after earlier insertions
        pos = k + sum(sizes[j - 1] - 1 for j in done if j < k)
        result = result.compose(pos, GraphSum.of(flavor, hs[k - 1]))
        done.add(k)
    return result


def full_compose_simple_raw(n: int, mask: int, blocks: Sequence[tuple[int, int]]) -> list[int]:
    """Direct full composition for Lie-gra: every edge (u, v) of the outer
    graph becomes a nonempty bipartite edge pattern between the blocks."""
    offsets = []
    off = 0
    base = 0
    for bn, bm in blocks:
        offsets.append(off)
        base |= G.relabel_mask(bm, list(range(off, off + bn)))
        off += bn
    options = []
    for u, v in G.edges_of(mask):
        ou, ov = offsets[u - 1], offsets[v - 1]
        pairs = [G.bit(ou + a, ov + b) for a in range(blocks[u - 1][0]) for b in range(blocks[v - 1][0])]
        opts = []
        for s in range(1, 1 << len(pairs)):
            m = 0
            for t in G.bits(s):
                m |= pairs[t]
            opts.append(m)
        options.append(opts)
    return or_products(base, options)


# ---------------------------------------------------------------------------
# projections and inclusions


def project_to_rt(g) -> GraphSum:
    """Keep g when it is a rooted tree, else zero.  Accepts graphs or sums."""
    if isinstance(g, GraphSum):
        return GraphSum(RT, g.arity, {h: c for h, c in g.terms.items() if is_rooted_tree(h)})
    return GraphSum.of(RT, g) if is_rooted_tree(g) else GraphSum.zero(RT, g.n)


def project_rt_to_lad(t) -> GraphSum:
    if isinstance(t, GraphSum):
        return GraphSum(LAD, t.arity, {h: c for h, c in t.terms.items() if is_ladder(h)})
    return GraphSum.of(LAD, t) if is_ladder(t) else GraphSum.zero(LAD, t.n)


def include(flavor: str, s: GraphSum) -> GraphSum:
    """Reinterpret a sum of trees or ladders in a larger flavor."""
    return GraphSum(flavor, s.arity, s.terms)


def mgra_embedding(g: DirectedGraph, e_max: int) -> GraphSum:
    """The image of g in completed Lie-mgra truncated at ``e_max`` edges: every
    multigraph whose underlying simple graph is g, with coefficient 1."""
    es = list(g.edges)
    extra = e_max - len(es)
    terms = {}
    if extra >= 0:
        for mult in product(range(extra + 1), repeat=len(es)):
            if sum(mult) <= extra:
                terms[MultiGraph(g.n, [e for e, k in zip(es, mult) for _ in range(k + 1)])] = Fraction(1)
    return GraphSum(MGRA, g.n, terms)


def truncate_edges(s: GraphSum, e_max: int) -> GraphSum:
    return GraphSum(s.flavor, s.arity, {g: c for g, c in s.terms.items() if len(g.edges) <= e_max})


# ---------------------------------------------------------------------------
# distributive law


@dataclass(frozen=True)
class PartitionGraph:
    """A graph whose vertex k stands for the block ``blocks[k-1]``."""

    graph: DirectedGraph
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if len(blocks) != self.graph.n:
            raise GraphError("one block per vertex required")
        union = set().union(*blocks) if blocks else set()
        if any(not b for b in blocks) or sum(len(b) for b in blocks) != len(union):
            raise GraphError("blocks must be nonempty and pairwise disjoint")
        if union != set(range(1, len(union) + 1)):
            raise GraphError("blocks must cover 1..n")


def distributive_expand(pg: PartitionGraph) -> GraphSum:
    n = sum(len(b) for b in pg.blocks)
    options = []
    for u, v in pg.graph.edges:
        pairs = [G.bit(a - 1, b - 1) for a in sorted(pg.blocks[u - 1]) for b in sorted(pg.blocks[v - 1])]
        opts = []
        for s in range(1, 1 << len(pairs)):
            m = 0
            for t in G.bits(s):
                m |= pairs[t]
            opts.append(m)
        options.append(opts)
    return GraphSum.from_keys(NCGRA, n, or_products(0, options))


def _component_count(g: DirectedGraph) -> int:
    parent = list(range(g.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(1, g.n + 1)})


def ncgra_component_profile(cap: int = 3) -> Counter:
    """Observed component counts under ``compose_ncgra``.

    Keys are ``(components of g1, components of g2, components of a term)``
    over all labeled factors with at most ``cap`` vertices, values count the
    terms.  The profile is recorded as data; no connectivity rule is imposed.
    """
    basis = [g for n in range(1, cap + 1) for g in G.enumerate_labeled(n, G.NC)]
    profile: Counter = Counter()
    for g1 in basis:
        c1 = _component_count(g1)
        for g2 in basis:
            c2 = _component_count(g2)
            for i in range(1, g1.n + 1):
                for g in compose_ncgra(g1, i, g2).terms:
                    profile[c1, c2, _component_count(g)] += 1
    return profile


# ---------------------------------------------------------------------------
# axiom checks


def labeled_basis(flavor: str, n: int, mgra_edges: int | None = None) -> list:
    if flavor == LIEGRA:
        return list(G.enumerate_labeled(n, G.CONNECTED))
    if flavor == NCGRA:
        return list(G.enumerate_labeled(n, G.NC))
    if flavor == RT:
        return [g for g in G.enumerate_labeled(n, G.CONNECTED) if is_rooted_tree(g)]
    if flavor == LAD:
        return [g for g in G.enumerate_labeled(n, G.CONNECTED) if is_ladder(g)]
    if flavor == MGRA:
        return list(G.enumerate_labeled(n, G.MULTI, max_edges=n if mgra_edges is None else mgra_edges))
    raise CompositionError(f"unknown flavor {flavor!r}")


@dataclass
class AxiomReport:
    flavor: str
    cap: int
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    failed: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return not self.failed

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in self.checked.items())
        status = "pass" if self.passed else "FAIL " + ", ".join(f"{k}={v}" for k, v in self.failed.items())
        return f"{self.flavor} axioms up to {self.cap} vertices: {status} [{counts}]"


def _expand(flavor, n, keys, j, n3, k3, allow_empty) -> list:
    """Sorted multiset of the terms of (sum of keys) o_j g3."""
    acc: list = []
    for k in keys:
        acc.extend(compose_raw(flavor, n, k, j, n3, k3, allow_empty))
    acc.sort()
    return acc


def orbit_representatives(flavor: str, graphs: Sequence) -> list:
    """One labeled graph per relabeling orbit (the least key in the orbit)."""
    reps = {}
    for g in graphs:
        k = _key(flavor, g)
        least = min(_relabel_raw(flavor, k, p) for p in permutations(range(g.n)))
        reps.setdefault((g.n, least), _graph(flavor, g.n, least))
    return sorted(reps.values(), key=lambda g: (g.n, g.edges))


def check_operad_axioms(
    flavor: str,
    cap: int = 3,
    allow_empty: bool = False,
    max_failures: int = 20,
    mgra_edges: int | None = 2,
    representatives: bool = True,
) -> AxiomReport:
    """Check unit, sequential, parallel and equivariance axioms for all
    labeled factors with at most ``cap`` vertices.

    Unit runs over every labeled factor.  With ``representatives`` the other
    axioms run over one factor per relabeling orbit, at every insertion
    index; equivariance is tested with the full symmetric groups acting on
    those representatives, which reaches every labeled pair, and then
    transports the sequential and parallel axioms to every labeled instance.
    ``representatives=False`` runs every axiom over all labeled factors.  ``mgra_edges`` bounds the edges of multigraph factors.
    ``allow_empty`` switches Lie-gra/nc composition to the corrupted rule that
    also admits the empty reattachment set (a negative control).
    """
    if allow_empty and flavor not in (LIEGRA, NCGRA):
        raise CompositionError("the corrupted rule only exists for simple-graph flavors")
    report = AxiomReport(flavor, cap)
    labeled = [g for n in range(1, cap + 1) for g in labeled_basis(flavor, n, mgra_edges)]
    basis = [(g, _key(flavor, g)) for g in labeled]
    factors = [(g, _key(flavor, g)) for g in orbit_representatives(flavor, labeled)] if representatives else basis

    def comp(n1, k1, i, n2, k2):
        return compose_raw(flavor, n1, k1, i, n2, k2, allow_empty)

    def fail(axiom, detail, lhs, rhs, n):
        report.failed[axiom] += 1
        if len(report.failures) >= max_failures:
            return
        lc, rc = Counter(lhs), Counter(rhs)
        diff = [
            f"{_graph(flavor, n, k).edges}: {lc[k]} vs {rc[k]}"
            for k in sorted(set(lc) | set(rc), key=str)
            if lc[k] != rc[k]
        ]
        report.failures.append(f"{axiom} {detail}: " + "; ".join(diff[:6]))

    # multisets of terms are compared as sorted lists
    unit = (1, _key(flavor, _unit(flavor)))
    count = 0
    for g, k in basis:
        for i in range(1, g.n + 1):
            lhs = sorted(comp(g.n, k, i, *unit))
            if lhs != [k]:
                fail("unit-right", f"{g.edges} o_{i} 1", lhs, [k], g.n)
            count += 1
        lhs = sorted(comp(*unit, 1, g.n, k))
        if lhs != [k]:
            fail("unit-left", f"1 o_1 {g.edges}", lhs, [k], g.n)
        count += 1
    report.checked["unit"] = count

    # sequential: (g1 o_i g2) o_j g3 = g1 o_i (g2 o_{j-i+1} g3)
    count = 0
    for g1, k1 in factors:
        for i in range(1, g1.n + 1):
            for g2, k2 in factors:
                inner = comp(g1.n, k1, i, g2.n, k2)
                n12 = g1.n + g2.n - 1
                for j in range(i, i + g2.n):
                    for g3, k3 in factors:
                        lhs = _expand(flavor, n12, inner, j, g3.n, k3, allow_empty)
                        rhs = []
                        for k23 in comp(g2.n, k2, j - i + 1, g3.n, k3):
                            rhs.extend(comp(g1.n, k1, i, g2.n + g3.n - 1, k23))
                        rhs.sort()
                        if lhs != rhs:
                            fail("sequential", f"{g1.edges} o_{i} {g2.edges} o_{j} {g3.edges}", lhs, rhs, n12 + g3.n - 1)
                        count += 1
    report.checked["sequential"] = count

    # parallel: (g1 o_i g2) o_{j+|g2|-1} g3 = (g1 o_j g3) o_i g2 for i < j
    count = 0
    for g1, k1 in factors:
        for i in range(1, g1.n + 1):
            for j in range(i + 1, g1.n + 1):
                for g2, k2 in factors:
                    left_inner = comp(g1.n, k1, i, g2.n, k2)
                    for g3, k3 in factors:
                        lhs = _expand(flavor, g1.n + g2.n - 1, left_inner, j + g2.n - 1, g3.n, k3, allow_empty)
                        rhs = _expand(flavor, g1.n + g3.n - 1, comp(g1.n, k1, j, g3.n, k3), i, g2.n, k2, allow_empty)
                        if lhs != rhs:
                            n = g1.n + g2.n + g3.n - 2
                            fail("parallel", f"{g1.edges} o_{i},{j} {g2.edges} {g3.edges}", lhs, rhs, n)
                        count += 1
    report.checked["parallel"] = count

    # equivariance: (s.g1) o_{s(i)} (t.g2) = (s o_i t).(g1 o_i g2)
    count = 0
    for g1, k1 in factors:
        for g2, k2 in factors:
            n = g1.n + g2.n - 1
            for i in range(1, g1.n + 1):
                base = comp(g1.n, k1, i, g2.n, k2)
                for s in permutations(range(g1.n)):
                    a = _relabel_raw(flavor, k1, s)
                    for t in permutations(range(g2.n)):
                        b = _relabel_raw(flavor, k2, t)
                        rho = _block_permutation(g1.n, i, g2.n, s, t)
                        lhs = sorted(comp(g1.n, a, s[i - 1] + 1, g2.n, b))
                        rhs = sorted(_relabel_raw(flavor, k, rho) for k in base)
                        if lhs != rhs:
                            fail("equivariance", f"{g1.edges} o_{i} {g2.edges} under {s},{t}", lhs, rhs, n)
                        count += 1
    report.checked["equivariance"] = count
    return report


def _unit(flavor: str):
    return MultiGraph(1) if flavor == MGRA else DirectedGraph(1)


def _relabel_raw(flavor: str, key, perm0: Sequence[int]):
    if flavor == MGRA:
        return tuple(sorted((perm0[u - 1] + 1, perm0[v - 1] + 1) for u, v in key))
    return G.relabel_mask(key, perm0)


def _block_permutation(n1: int, i: int, n2: int, s: Sequence[int], t: Sequence[int]) -> list[int]:
    """0-based permutation of the composite induced by s on g1 and t on g2."""
    _, f1, f2 = _shift_maps(n1, i, n2)
    _, h1, h2 = _shift_maps(n1, s[i - 1] + 1, n2)
    rho = [0] * (n1 + n2 - 1)
    for v in range(n1):
        if v != i - 1:
            rho[f1[v]] = h1[s[v]]
    for w in range(n2):
        rho[f2[w]] = h2[t[w]]
    return rho
